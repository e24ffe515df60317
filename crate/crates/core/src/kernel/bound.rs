//! Explicit vertex bound for the large-modulator kernel.

use crate::instance::Epsilon;

fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, j| acc.saturating_mul(n - j) / (j + 1))
}

/// `B(k, ε)` with `k' = ⌈6k/ε⌉` and `p = ⌈1/ε⌉`:
///
/// ```text
/// B = k'                     H (including super-vertices)
///   + k'^2                   R
///   + (k' + 1) k'            marked I-vertices
///   + sum_{j=1..p} C(k', j)  one twin per set of at most p components of G[H]
///   + k                      unmarked modulator vertices, never dropped
///   + k'                     pendants
/// ```
///
/// In the large branch `|L| < k'`, so every vertex of degree above `k'`
/// lies in `L`, giving `|H| <= k' - 1`, and `R` is covered by `L \ H` and
/// its at most `k'` neighbours each.
pub fn size_bound(k: usize, eps: Epsilon) -> u64 {
    let kp = eps.k_prime(k) as u128;
    let p = eps.ceil_inv() as u128;
    let twins = (1..=p).fold(0u128, |acc, j| acc.saturating_add(binomial(kp, j)));
    let total = kp
        .saturating_add(kp.saturating_mul(kp))
        .saturating_add((kp + 1).saturating_mul(kp))
        .saturating_add(twins)
        .saturating_add(k as u128)
        .saturating_add(kp);
    total.min(u64::MAX as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let one = Epsilon::new(1, 1).unwrap();
        // k' = 6, p = 1: 6 + 36 + 42 + 6 + 1 + 6
        assert_eq!(size_bound(1, one), 97);
        let half = Epsilon::new(1, 2).unwrap();
        // k' = 24, p = 2: 24 + 576 + 600 + (24 + 276) + 2 + 24
        assert_eq!(size_bound(2, half), 1526);
        assert_eq!(size_bound(0, half), 0);
        assert!(size_bound(8, Epsilon::new(1, 4).unwrap()) > size_bound(8, half));
    }
}
