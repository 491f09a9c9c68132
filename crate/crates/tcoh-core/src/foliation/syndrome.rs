use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::code::{BitMatrix, CssCode};
use crate::{Error, Result};

/// Measurement record of a foliation run of `L` rounds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SyndromeRecord {
    /// `s[t - 1]` holds the X-check outcomes for odd `t` and the Z-check
    /// outcomes for even `t`.
    pub s: BitMatrix,
    /// `m[i][t - 1]` is the teleportation outcome of code qubit `i` in round `t`.
    pub m: BitMatrix,
}

impl SyndromeRecord {
    /// All-zero record.
    pub fn zeros(code: &CssCode, rounds: usize) -> SyndromeRecord {
        SyndromeRecord {
            s: (1..=2 * rounds).map(|t| alloc::vec![false; code.checks_for_round(t).len()]).collect(),
            m: alloc::vec![alloc::vec![false; 2 * rounds]; code.n],
        }
    }

    pub fn rounds(&self) -> usize {
        self.s.len() / 2
    }

    pub fn check_shape(&self, code: &CssCode) -> Result<()> {
        let bad = |what: String| Err(Error::Domain(format!("syndrome record shape: {what}")));
        if self.s.len() % 2 != 0 {
            return bad(format!("{} rounds of outcomes, expected an even count", self.s.len()));
        }
        for (i, row) in self.s.iter().enumerate() {
            let want = code.checks_for_round(i + 1).len();
            if row.len() != want {
                return bad(format!("s at t={} has {} bits, expected {want}", i + 1, row.len()));
            }
        }
        if self.m.len() != code.n {
            return bad(format!("m has {} rows, expected {}", self.m.len(), code.n));
        }
        if let Some(i) = self.m.iter().position(|r| r.len() != self.s.len()) {
            return bad(format!("m row {i} has {} bits, expected {}", self.m[i].len(), self.s.len()));
        }
        Ok(())
    }
}

/// Corrected syndromes `s_t + s_{t−2} + u_t(m)` per round, where `u_t` is the
/// parity of the round-`t` teleportation outcomes over each check's support
/// and `s_{t−2} = 0` for `t ≤ 2`. Every bit is zero in an error-free run.
pub fn cluster_stabilizer_outcomes(rec: &SyndromeRecord, code: &CssCode) -> Result<BitMatrix> {
    rec.check_shape(code)?;
    let mut out = Vec::with_capacity(rec.s.len());
    for t in 1..=rec.s.len() {
        let checks = code.checks_for_round(t);
        let row = checks
            .iter()
            .enumerate()
            .map(|(j, check)| {
                let prev = t > 2 && rec.s[t - 3][j];
                let u = check.iter().enumerate().filter(|(i, b)| **b && rec.m[*i][t - 1]).count() % 2 == 1;
                rec.s[t - 1][j] ^ prev ^ u
            })
            .collect();
        out.push(row);
    }
    Ok(out)
}

/// Rounds separated by `|`, bits as `0`/`1`; an empty round prints as `-`.
pub fn syndrome_string(rows: &[Vec<bool>]) -> String {
    let mut s = String::new();
    for (i, r) in rows.iter().enumerate() {
        if i > 0 {
            s.push('|');
        }
        if r.is_empty() {
            s.push('-');
        }
        for b in r {
            s.push(if *b { '1' } else { '0' });
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_record() {
        let c = CssCode::four_qubit();
        let r = SyndromeRecord::zeros(&c, 2);
        let k = cluster_stabilizer_outcomes(&r, &c).unwrap();
        assert_eq!(syndrome_string(&k), "0|00|0|00");
    }

    #[test]
    fn outcome_parities_enter() {
        let c = CssCode::four_qubit();
        let mut r = SyndromeRecord::zeros(&c, 2);
        r.m[0][1] = true; // Z-check 0 at t=2
        r.s[0][0] = true; // X-check at t=1, carried to t=3
        let k = cluster_stabilizer_outcomes(&r, &c).unwrap();
        assert_eq!(syndrome_string(&k), "1|10|1|00");
    }

    #[test]
    fn shape_mismatch() {
        let c = CssCode::four_qubit();
        let mut r = SyndromeRecord::zeros(&c, 1);
        r.s[1].pop();
        assert!(cluster_stabilizer_outcomes(&r, &c).is_err());
        let rep = CssCode::repetition(3).unwrap();
        assert_eq!(syndrome_string(&cluster_stabilizer_outcomes(&SyndromeRecord::zeros(&rep, 1), &rep).unwrap()), "-|00");
    }
}
