//! Regular representation: restriction of scalars from Q(a) to Q.

use num_rational::BigRational;

use super::matrix::Mat;
use crate::arith::{NfElem, NumberField, Rationals};

/// Replaces every entry of `h` by its m x m multiplication matrix, giving an
/// nm x nm rational matrix. Entry (i, j) becomes the block at (i m, j m).
pub fn regular_representation(k: &NumberField, h: &Mat<NfElem>) -> Mat<BigRational> {
    let m = k.degree();
    let n = h.n();
    let mut out = Mat::zeros(&Rationals, n * m);
    for i in 0..n {
        for j in 0..n {
            let b = k.mult_matrix(h.get(i, j));
            for r in 0..m {
                for c in 0..m {
                    out.set(i * m + r, j * m + c, b.get(r, c).clone());
                }
            }
        }
    }
    out
}
