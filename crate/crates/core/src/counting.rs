//! Exact counts of scale-distinguishable assignments and of balanced
//! k-versus-k weighings, each with a brute-force oracle.
//!
//! All arithmetic is exact big-integer. `a_k` below is the number of class
//! assignments of `2k` coins for which `k` coins balance against the other
//! `k`, with `a_0 = 1`.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::model::{weak_order_of, Assignment};
use crate::scale::delta_vector;
use crate::model::Weighing;

pub const DISTINGUISHABLE_BRUTE_MAX: usize = 10;
pub const BALANCE_BRUTE_MAX: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRow {
    pub n: usize,
    pub closed_form: BigUint,
    pub brute_force: Option<BigUint>,
}

impl CountRow {
    pub fn matches(&self) -> Option<bool> {
        self.brute_force.as_ref().map(|b| *b == self.closed_form)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountTable {
    pub rows: Vec<CountRow>,
}

impl CountTable {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches() != Some(false))
    }

    /// TSV with a header line: `n closed_form brute_force match`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tclosed_form\tbrute_force\tmatch\n");
        for r in &self.rows {
            let (b, m) = match (&r.brute_force, r.matches()) {
                (Some(b), Some(m)) => (b.to_string(), if m { "yes" } else { "no" }),
                _ => ("-".to_string(), "-"),
            };
            out.push_str(&format!("{}\t{}\t{}\t{}\n", r.n, r.closed_form, b, m));
        }
        out
    }
}

fn pow(base: u32, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// `3^n - 2·2^n + 2`.
pub fn distinguishable_count(n: usize) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(pow(3, n) + 2u32 - pow(2, n) * 2u32)
}

fn decode(mut code: usize, n: usize, c: u8) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for slot in v.iter_mut().rev() {
        *slot = (code % c as usize) as u8 + 1;
        code /= c as usize;
    }
    v
}

/// Enumerates all `3^n` assignments and counts their distinct weak orders.
pub fn distinguishable_count_bruteforce(n: usize, exec: Exec) -> Result<BigUint> {
    if !(1..=DISTINGUISHABLE_BRUTE_MAX).contains(&n) {
        return Err(Error::GuardExceeded(format!(
            "brute force needs 1 <= n <= {DISTINGUISHABLE_BRUTE_MAX}"
        )));
    }
    let total = 3usize.pow(n as u32);
    let orders = exec.map_range(total, |code| {
        let a = Assignment::new(decode(code, n, 3), 3).expect("decoded classes are in range");
        weak_order_of(&a)
    });
    let distinct: HashSet<_> = orders.into_iter().collect();
    Ok(BigUint::from(distinct.len()))
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `sum_{i=0..k} C(k,i)^2 C(2i,i)`.
pub fn balance_count(k: usize) -> BigUint {
    (0..=k)
        .map(|i| {
            let b = binomial(k, i);
            &b * &b * binomial(2 * i, i)
        })
        .fold(BigUint::zero(), |acc, x| acc + x)
}

/// Counts assignments of `2k` coins where `{0..k-1}` against `{k..2k-1}`
/// has a zero class-count difference.
pub fn balance_count_bruteforce(k: usize, exec: Exec) -> Result<BigUint> {
    if !(1..=BALANCE_BRUTE_MAX).contains(&k) {
        return Err(Error::GuardExceeded(format!(
            "brute force needs 1 <= k <= {BALANCE_BRUTE_MAX}"
        )));
    }
    let n = 2 * k;
    let w = Weighing::new((0..k).collect(), (k..n).collect())?;
    let total = 3usize.pow(n as u32);
    let hits = exec.count_range(total, |code| {
        let a = Assignment::new(decode(code, n, 3), 3).expect("decoded classes are in range");
        delta_vector(&w, &a).expect("pans are in range").is_zero()
    });
    Ok(BigUint::from(hits))
}

/// Checks `(n+1)^2 a_{n+1} = (10n^2+10n+3) a_n - 9n^2 a_{n-1}` for
/// `1 <= n < max_n`.
pub fn balance_recurrence_check(max_n: usize) -> Result<bool> {
    if max_n < 2 {
        return Err(Error::InvalidArgument("max_n must be at least 2".into()));
    }
    let a: Vec<BigInt> = (0..=max_n).map(|k| BigInt::from(balance_count(k))).collect();
    Ok((1..max_n).all(|n| {
        let m = BigInt::from(n);
        let lhs = (&m + 1) * (&m + 1) * &a[n + 1];
        let rhs = (BigInt::from(10) * &m * &m + BigInt::from(10) * &m + 3) * &a[n]
            - BigInt::from(9) * &m * &m * &a[n - 1];
        lhs == rhs
    }))
}

/// Checks `a_{n+1} < 9·a_n` for `1 <= n < max_n`, i.e. the balance ratio
/// `a_n / 9^n` strictly decreases.
pub fn balance_ratio_decreasing(max_n: usize) -> Result<bool> {
    if max_n < 2 {
        return Err(Error::InvalidArgument("max_n must be at least 2".into()));
    }
    let a: Vec<BigUint> = (0..=max_n).map(balance_count).collect();
    Ok((1..max_n).all(|n| a[n + 1] < &a[n] * 9u32))
}

/// Checks `a_k < 3^(2k) / 3`, i.e. `3·a_k < 9^k`, for `2 <= k <= max_k`.
pub fn balance_below_third(max_k: usize) -> bool {
    (2..=max_k).all(|k| balance_count(k) * 3u32 < pow(9, k))
}

/// Checks `3^n - 2·2^n + 2 > 3^(n-1)` for `3 <= n <= max_n`.
pub fn lower_bound_check(max_n: usize) -> Result<bool> {
    if max_n < 3 {
        return Err(Error::InvalidArgument("max_n must be at least 3".into()));
    }
    (3..=max_n).try_fold(true, |ok, n| Ok(ok && distinguishable_count(n)? > pow(3, n - 1)))
}

pub fn distinguishable_table(max_n: usize, exec: Exec) -> Result<CountTable> {
    let rows = (1..=max_n)
        .map(|n| {
            Ok(CountRow {
                n,
                closed_form: distinguishable_count(n)?,
                brute_force: (n <= DISTINGUISHABLE_BRUTE_MAX)
                    .then(|| distinguishable_count_bruteforce(n, exec))
                    .transpose()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable { rows })
}

pub fn balance_table(max_k: usize, exec: Exec) -> Result<CountTable> {
    let rows = (1..=max_k)
        .map(|k| {
            Ok(CountRow {
                n: k,
                closed_form: balance_count(k),
                brute_force: (k <= BALANCE_BRUTE_MAX)
                    .then(|| balance_count_bruteforce(k, exec))
                    .transpose()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn distinguishable_values() {
        let got: Vec<BigUint> = (1..=6).map(|n| distinguishable_count(n).unwrap()).collect();
        assert_eq!(got, [1u64, 3, 13, 51, 181, 603].map(big));
        assert!(distinguishable_count(0).is_err());
    }

    #[test]
    fn distinguishable_brute_force_values() {
        let e = Exec::default();
        assert_eq!(distinguishable_count_bruteforce(1, e).unwrap(), big(1));
        assert_eq!(distinguishable_count_bruteforce(3, e).unwrap(), big(13));
        assert_eq!(distinguishable_count_bruteforce(7, e).unwrap(), big(1933));
        assert!(distinguishable_count_bruteforce(11, e).is_err());
        assert!(distinguishable_count_bruteforce(0, e).is_err());
    }

    #[test]
    fn balance_values() {
        let got: Vec<BigUint> = (0..=4).map(balance_count).collect();
        assert_eq!(got, [1u64, 3, 15, 93, 639].map(big));
        assert_eq!(balance_count(5), big(4653));
    }

    #[test]
    fn balance_brute_force_values() {
        let e = Exec::default();
        assert_eq!(balance_count_bruteforce(1, e).unwrap(), big(3));
        assert_eq!(balance_count_bruteforce(2, e).unwrap(), big(15));
        assert_eq!(balance_count_bruteforce(5, e).unwrap(), big(4653));
        assert!(balance_count_bruteforce(6, e).is_err());
    }

    #[test]
    fn recurrence_and_ratio() {
        assert!(balance_recurrence_check(3).unwrap());
        assert!(balance_recurrence_check(20).unwrap());
        assert!(balance_recurrence_check(1).is_err());
        assert!(balance_ratio_decreasing(2).unwrap());
        assert!(balance_ratio_decreasing(4).unwrap());
        assert!(balance_ratio_decreasing(50).unwrap());
        assert!(balance_below_third(50));
        // k = 1 sits exactly on the third
        assert_eq!(balance_count(1) * 3u32, big(9));
    }

    #[test]
    fn lower_bound() {
        assert!(lower_bound_check(3).unwrap());
        assert!(lower_bound_check(64).unwrap());
        assert!(lower_bound_check(2).is_err());
        // n = 2 is the boundary the inequality excludes
        assert!(distinguishable_count(2).unwrap() <= big(3));
    }

    #[test]
    fn tables_render_tsv() {
        let t = balance_table(6, Exec::Sequential).unwrap();
        assert!(t.all_match());
        let tsv = t.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "n\tclosed_form\tbrute_force\tmatch");
        assert_eq!(lines[2], "2\t15\t15\tyes");
        assert_eq!(lines[6], "6\t35169\t-\t-");
    }
}
