//! Closed forms for powers `(s_1⋯s_n)^λ s_1⋯s_r` of a Coxeter element.
//!
//! Suffix lengths follow the convention `1 ≤ r ≤ n`; `r = 0` is first
//! rewritten as `(λ − 1, n)` (and means the identity when `λ = 0`).

use alloc::collections::BTreeSet;
use alloc::format;

use crate::error::{Error, Result};
use crate::system::Label;

/// Moves `r = 0` to `(λ − 1, n)`. Returns `None` for the identity `(0, 0)`.
pub fn normalize(n: usize, lambda: usize, r: usize) -> Result<Option<(usize, usize)>> {
    if r > n {
        return Err(Error::Parameter(format!("suffix length {r} exceeds rank {n}")));
    }
    Ok(match (lambda, r) {
        (0, 0) => None,
        (l, 0) => Some((l - 1, n)),
        (l, r) => Some((l, r)),
    })
}

/// Reflection length in the universal group: `λ(n − 2) + r`.
pub fn universal_power_length(n: usize, lambda: usize, r: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::Parameter(format!("rank {n} must be at least 2")));
    }
    Ok(match normalize(n, lambda, r)? {
        None => 0,
        Some((l, r)) => l * (n - 2) + r,
    })
}

/// Length of the shortest consecutive block of `(s_1⋯s_n)^λ` containing an
/// alternating block of length `m`.
pub fn chi(m: u32, n: usize) -> usize {
    let (m, n) = (m as usize, n);
    if m % 2 == 1 {
        (m - 1) / 2 * n + 1
    } else {
        m / 2 * n - (n - 2)
    }
}

/// `χ(m, n)·(n − 2) − 2n > 0`: the growth condition for the lower bound.
pub fn unbounded_condition(m: u32, n: usize) -> bool {
    (chi(m, n) * (n - 2)) as i64 - 2 * n as i64 > 0
}

/// `⌈λn(1 − 2/χ) − 2λ + 2⌉`, a lower bound on `l_R((s_1⋯s_n)^λ)` for the
/// smallest label `k`. Integer arithmetic throughout.
pub fn theorem1_lower_bound(n: usize, k: u32, lambda: usize) -> Result<i64> {
    if n < 3 || k < 2 || lambda < 1 {
        return Err(Error::Parameter(format!(
            "need n ≥ 3, k ≥ 2, λ ≥ 1 (got n = {n}, k = {k}, λ = {lambda})"
        )));
    }
    let chi = chi(k, n) as i64;
    let (n, lambda) = (n as i64, lambda as i64);
    // (λn(χ − 2) + (2 − 2λ)χ) / χ
    let numerator = lambda * n * (chi - 2) + (2 - 2 * lambda) * chi;
    Ok(ceil_div(numerator, chi))
}

fn ceil_div(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    if a.rem_euclid(b) == 0 {
        q
    } else {
        q + 1
    }
}

fn indicator(cond: bool) -> usize {
    usize::from(cond)
}

/// `λ + r − 2⌊(λ + 𝟙_{r≥2})/k⌋` for rank 3.
pub fn upper_bound_rank3(k: u32, lambda: usize, r: usize) -> Result<usize> {
    if k < 3 || !(1..=3).contains(&r) {
        return Err(Error::Parameter(format!("need k ≥ 3 and 1 ≤ r ≤ 3 (got k = {k}, r = {r})")));
    }
    Ok(lambda + r - 2 * ((lambda + indicator(r >= 2)) / k as usize))
}

/// `λ(n−2) + r − 2·𝟙_{λ+𝟙_{r≥2} ≥ k}·(1 + ⌊(λ − k + 𝟙_{r≥2})/(k − 1)⌋)` for
/// rank at least 4.
pub fn upper_bound_rank_ge4(n: usize, k: u32, lambda: usize, r: usize) -> Result<usize> {
    if n < 4 || k < 3 || !(1..=n).contains(&r) {
        return Err(Error::Parameter(format!(
            "need n ≥ 4, k ≥ 3 and 1 ≤ r ≤ n (got n = {n}, k = {k}, r = {r})"
        )));
    }
    let k = k as usize;
    let shifted = lambda + indicator(r >= 2);
    let base = lambda * (n - 2) + r;
    if shifted < k {
        return Ok(base);
    }
    Ok(base - 2 * (1 + (shifted - k) / (k - 1)))
}

/// The values `l_R((s_1 s_2 s_3)^λ)` can take in rank 3 when exactly two
/// generators commute: `{2}` for even `λ`, `{1, 3}` for odd `λ`.
pub fn commuting_rank3_length(lambda: usize) -> Result<BTreeSet<usize>> {
    if lambda == 0 {
        return Err(Error::Parameter("λ must be at least 1".into()));
    }
    Ok(if lambda % 2 == 0 {
        BTreeSet::from([2])
    } else {
        BTreeSet::from([1, 3])
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundParams {
    pub n: usize,
    pub k: Label,
    pub lambda: usize,
    pub r: usize,
}

/// Bounds for `(s_1⋯s_n)^λ s_1⋯s_r` in the single braided group `W^n_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub params: BoundParams,
    /// Largest of the parity floor and the growth bound, shifted by the
    /// suffix and rounded up to the right parity.
    pub lower: i64,
    pub upper: usize,
    /// Value in the universal group, an upper bound in any case.
    pub exact_universal: usize,
    pub unbounded_condition_met: bool,
}

/// Evaluates every applicable bound.
///
/// The growth bound covers the pure power; the suffix is handled by
/// multiplying by at most `r` (or, from the next power, `n − r`) reflections,
/// each of which changes `l_R` by one. The word is reduced, so `l_R` has the
/// parity of `λn + r`.
pub fn bounds(params: BoundParams) -> Result<BoundReport> {
    let BoundParams { n, k, lambda, r } = params;
    if n < 3 {
        return Err(Error::Parameter(format!("rank {n} must be at least 3")));
    }
    let exact_universal = universal_power_length(n, lambda, r)?;
    let Some((l, rr)) = normalize(n, lambda, r)? else {
        return Ok(BoundReport {
            params,
            lower: 0,
            upper: 0,
            exact_universal: 0,
            unbounded_condition_met: matches!(k, Label::Infinity) || k.finite().is_some_and(|k| unbounded_condition(k, n)),
        });
    };
    let Label::Finite(kf) = k else {
        return Ok(BoundReport {
            params,
            lower: exact_universal as i64,
            upper: exact_universal,
            exact_universal,
            unbounded_condition_met: true,
        });
    };
    if kf < 3 {
        return Err(Error::Parameter(format!("label {kf} must be at least 3")));
    }
    let upper = if n == 3 {
        upper_bound_rank3(kf, l, rr)?
    } else {
        upper_bound_rank_ge4(n, kf, l, rr)?
    };
    let parity = ((l * n + rr) % 2) as i64;
    let mut lower = parity;
    if l >= 1 {
        lower = lower.max(theorem1_lower_bound(n, kf, l)? - rr as i64);
    }
    lower = lower.max(theorem1_lower_bound(n, kf, l + 1)? - (n - rr) as i64);
    if (lower - parity) % 2 != 0 {
        lower += 1;
    }
    Ok(BoundReport {
        params,
        lower,
        upper,
        exact_universal,
        unbounded_condition_met: unbounded_condition(kf, n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universal_lengths() {
        assert_eq!(universal_power_length(3, 4, 2), Ok(6));
        assert_eq!(universal_power_length(3, 0, 1), Ok(1));
        assert_eq!(universal_power_length(5, 3, 5), Ok(14));
        assert_eq!(universal_power_length(3, 2, 0), Ok(4));
        assert_eq!(universal_power_length(3, 0, 0), Ok(0));
        assert!(universal_power_length(3, 1, 4).is_err());
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(3, 3), 4);
        assert_eq!(chi(4, 3), 5);
        assert_eq!(chi(5, 4), 9);
    }

    #[test]
    fn thresholds() {
        assert!(unbounded_condition(5, 3));
        assert!(!unbounded_condition(4, 3));
        assert!(unbounded_condition(3, 4));
    }

    #[test]
    fn growth_bound() {
        assert_eq!(theorem1_lower_bound(3, 5, 1), Ok(3));
        assert_eq!(theorem1_lower_bound(3, 5, 7), Ok(3));
        assert!(theorem1_lower_bound(4, 3, 0).is_err());
        assert_eq!(ceil_div(-3, 2), -1);
        assert_eq!(ceil_div(3, 2), 2);
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(upper_bound_rank3(4, 5, 2), Ok(5));
        assert_eq!(upper_bound_rank3(3, 0, 1), Ok(1));
        assert_eq!(upper_bound_rank3(5, 4, 3), Ok(5));
        assert_eq!(upper_bound_rank_ge4(4, 3, 2, 1), Ok(5));
        assert_eq!(upper_bound_rank_ge4(4, 3, 3, 1), Ok(5));
        assert_eq!(upper_bound_rank_ge4(5, 3, 4, 2), Ok(10));
    }

    #[test]
    fn commuting_values() {
        assert_eq!(commuting_rank3_length(2).unwrap(), BTreeSet::from([2]));
        assert_eq!(commuting_rank3_length(3).unwrap(), BTreeSet::from([1, 3]));
        assert_eq!(commuting_rank3_length(1).unwrap(), BTreeSet::from([1, 3]));
    }

    #[test]
    fn reports() {
        let k = |v| Label::Finite(v);
        let rep = bounds(BoundParams { n: 3, k: k(4), lambda: 5, r: 2 }).unwrap();
        assert_eq!(rep.upper, 5);
        let rep = bounds(BoundParams { n: 4, k: k(3), lambda: 2, r: 1 }).unwrap();
        assert_eq!((rep.upper, rep.exact_universal), (5, 5));
        let rep = bounds(BoundParams { n: 3, k: k(5), lambda: 1, r: 3 }).unwrap();
        assert_eq!(rep.upper, 4);
        assert!(rep.lower <= 4);
    }
}
