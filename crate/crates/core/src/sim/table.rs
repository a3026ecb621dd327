use std::fmt::Write;

use crate::decision::DecisionProbs;

/// One line of a simulation table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimRow {
    pub n: usize,
    pub theta: f64,
    pub probs: DecisionProbs,
    /// Estimated power: accept frequency under `H0`, reject frequency otherwise.
    pub power: f64,
    /// Standard error of `power`.
    pub se: f64,
}

/// CSV with columns `n,theta,p_accept,p_agnostic,p_reject,se`.
pub fn write_csv(rows: &[SimRow]) -> String {
    let mut out = String::from("n,theta,p_accept,p_agnostic,p_reject,se\n");
    for r in rows {
        let p = r.probs;
        // Writing into a String cannot fail.
        let _ = writeln!(out, "{},{},{},{},{},{}", r.n, r.theta, p.p_accept, p.p_agnostic, p.p_reject, r.se);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let row = SimRow {
            n: 10,
            theta: 0.5,
            probs: DecisionProbs { p_accept: 0.25, p_agnostic: 0.5, p_reject: 0.25 },
            power: 0.25,
            se: 0.01,
        };
        assert_eq!(write_csv(&[row]), "n,theta,p_accept,p_agnostic,p_reject,se\n10,0.5,0.25,0.5,0.25,0.01\n");
    }
}
