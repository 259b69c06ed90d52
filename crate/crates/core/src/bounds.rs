//! Lower bounds on the size of PC encodings of AMO/EO and comparison tables
//! against the constructed encodings.
//!
//! Every ceiling is computed in integer arithmetic: `⌈a + √b⌉ = a + ⌈√b⌉`
//! for integer `a`, and `⌈√b⌉` comes from an integer square root.

use serde::Serialize;
use thiserror::Error;

use crate::encodings::{ceil_sqrt, product_size_table};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("n = {n} is outside the supported range (n ≥ {min})")]
    InvalidN { n: usize, min: usize },
}

fn require(n: usize, min: usize) -> Result<(), BoundsError> {
    if n < min {
        return Err(BoundsError::InvalidN { n, min });
    }
    Ok(())
}

/// Minimum size of any PC encoding of AMO_n or EO_n: `3n - 6` up to 8,
/// `⌈2n + √n - 2⌉` from 9 on, and 1 for `n = 2`.
pub fn lower_bound_general(n: usize) -> Result<usize, BoundsError> {
    require(n, 2)?;
    Ok(match n {
        2 => 1,
        3..=8 => 3 * n - 6,
        _ => 2 * n - 2 + ceil_sqrt(n),
    })
}

/// Minimum size of a 2-CNF PC encoding of AMO_n: `3n - 6` up to 10,
/// `⌈2n + 2√n - 3⌉` from 11 on, and 1 for `n = 2`.
pub fn lower_bound_2cnf(n: usize) -> Result<usize, BoundsError> {
    require(n, 2)?;
    Ok(match n {
        2 => 1,
        3..=10 => 3 * n - 6,
        _ => 2 * n - 3 + ceil_sqrt(4 * n),
    })
}

/// `2n + √(n - 3/4) - 3/2`, the size floor for p-encodings in regular form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularFloor {
    pub value: f64,
    pub ceiling: usize,
    /// The square root is rational (`4n - 3` is a perfect square), so
    /// `value` is exact.
    pub exact: bool,
}

pub fn regular_form_floor(n: usize) -> Result<RegularFloor, BoundsError> {
    require(n, 7)?;
    // value = 2n + (√(4n-3) - 3) / 2; its ceiling is 2n + k for the least
    // k with (2k + 3)² ≥ 4n - 3.
    let radicand = 4 * n - 3;
    let root = radicand.isqrt();
    let mut k = 0;
    while (2 * k + 3) * (2 * k + 3) < radicand {
        k += 1;
    }
    Ok(RegularFloor {
        value: 2.0 * n as f64 + ((radicand as f64).sqrt() - 3.0) / 2.0,
        ceiling: 2 * n + k,
        exact: root * root == radicand,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsRow {
    pub n: usize,
    pub lb_general: usize,
    pub lb_2cnf: usize,
    /// Regular-form floor (defined from `n = 7`).
    pub lb_regular_term: Option<f64>,
    pub regular_floor_ceil: Option<usize>,
    pub size_pairwise: usize,
    pub size_sequential: usize,
    pub size_product: usize,
}

pub fn bounds_table(n_from: usize, n_to: usize) -> Result<Vec<BoundsRow>, BoundsError> {
    require(n_from, 3)?;
    require(n_to, n_from)?;
    let product = product_size_table(n_to);
    (n_from..=n_to)
        .map(|n| {
            let floor = regular_form_floor(n).ok();
            Ok(BoundsRow {
                n,
                lb_general: lower_bound_general(n)?,
                lb_2cnf: lower_bound_2cnf(n)?,
                lb_regular_term: floor.map(|f| f.value),
                regular_floor_ceil: floor.map(|f| f.ceiling),
                size_pairwise: n * (n - 1) / 2,
                size_sequential: 3 * n - 6,
                size_product: product[n],
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn general_bound() {
        assert_eq!(lower_bound_general(5), Ok(9));
        assert_eq!(lower_bound_general(9), Ok(19));
        assert_eq!(lower_bound_general(2), Ok(1));
        assert_eq!(lower_bound_general(25), Ok(53));
        assert!(lower_bound_general(1).is_err());
    }

    #[test]
    fn two_cnf_bound() {
        assert_eq!(lower_bound_2cnf(9), Ok(21));
        assert_eq!(lower_bound_2cnf(10), Ok(24));
        assert_eq!(lower_bound_2cnf(25), Ok(57));
    }

    #[test]
    fn regular_floor() {
        let f = regular_form_floor(7).unwrap();
        assert_eq!((f.value, f.ceiling, f.exact), (15.0, 15, true));
        assert_eq!(regular_form_floor(8).unwrap().ceiling, 18);
        let f = regular_form_floor(49).unwrap();
        assert!((f.value - 103.4462).abs() < 1e-3);
        assert_eq!(f.ceiling, 104);
        assert!(regular_form_floor(6).is_err());
    }

    #[test]
    fn ceilings_match_floating_point() {
        for n in 9..2000 {
            let general = 2.0 * n as f64 + (n as f64).sqrt() - 2.0;
            assert_eq!(lower_bound_general(n).unwrap(), general.ceil() as usize, "n = {n}");
            if n >= 11 {
                let two = 2.0 * n as f64 + 2.0 * (n as f64).sqrt() - 3.0;
                assert_eq!(lower_bound_2cnf(n).unwrap(), two.ceil() as usize, "n = {n}");
            }
        }
    }

    #[test]
    fn table_rows() {
        let rows = bounds_table(3, 25).unwrap();
        let r25 = rows.last().unwrap();
        assert_eq!(
            (r25.lb_general, r25.lb_2cnf, r25.size_product, r25.size_sequential),
            (53, 57, 68, 69)
        );
        let r8 = &rows[5];
        assert_eq!((r8.n, r8.lb_general, r8.lb_2cnf, r8.size_sequential), (8, 18, 18, 18));
        assert_eq!((rows[0].lb_general, rows[0].size_pairwise), (3, 3));
        assert!(bounds_table(2, 5).is_err());
    }
}
