//! Field embeddings `F_{p^k} -> F_{p^m}` for `k | m`, found by splitting the
//! source modulus over the target (Cantor–Zassenhaus).

use num_bigint::BigUint;
use num_traits::Zero;
use rand::RngCore;

use super::fpoly::{split_root, FePoly};
use super::{Fe, Field};

/// A ring embedding of `source` into `target`, determined by the image of `w`.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    powers: Vec<Fe>,
}

impl Embedding {
    pub(super) fn new(source: &Field, target: &Field, rng: &mut dyn RngCore) -> Option<Embedding> {
        if source.characteristic() != target.characteristic()
            || !target.degree().is_multiple_of(source.degree())
        {
            return None;
        }
        let image = if source.degree() == 1 {
            target.zero()
        } else {
            let f: FePoly = source
                .modulus()
                .iter()
                .map(|c| target.from_biguint(c))
                .collect();
            split_root(&f, target, rng)?
        };
        let mut powers = Vec::with_capacity(source.degree());
        let mut x = target.one();
        for _ in 0..source.degree() {
            powers.push(x.clone());
            x = &x * &image;
        }
        Some(Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, x: &Fe) -> Fe {
        assert!(x.field() == &self.source, "element not in embedding source");
        x.coeffs()
            .iter()
            .zip(&self.powers)
            .fold(self.target.zero(), |acc, (c, w)| {
                acc + w * &self.target.from_biguint(c)
            })
    }

    /// Inverse image of `y`, if `y` lies in the embedded subfield.
    pub fn preimage(&self, y: &Fe) -> Option<Fe> {
        assert!(y.field() == &self.target, "element not in embedding target");
        let p = self.target.characteristic().clone();
        let k = self.source.degree();
        let m = self.target.degree();
        // Solve sum_i a_i * powers[i] = y over F_p: an m x (k+1) augmented system.
        let mut rows: Vec<Vec<BigUint>> = (0..m)
            .map(|r| {
                let mut row: Vec<BigUint> =
                    self.powers.iter().map(|w| w.coeffs()[r].clone()).collect();
                row.push(y.coeffs()[r].clone());
                row
            })
            .collect();
        let inv = |a: &BigUint| a.modpow(&(&p - 2u32), &p);
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..k {
            let Some(r) = (pivot_row..m).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(pivot_row, r);
            let iv = inv(&rows[pivot_row][col]);
            for c in rows[pivot_row].iter_mut() {
                *c = (&*c * &iv) % &p;
            }
            let pivot = rows[pivot_row].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != pivot_row && !row[col].is_zero() {
                    let factor = row[col].clone();
                    for (c, v) in row.iter_mut().zip(&pivot) {
                        *c = (&*c + &p - (&factor * v) % &p) % &p;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|row| !row[k].is_zero()) {
            return None;
        }
        let mut coeffs = vec![BigUint::zero(); k];
        for (i, &col) in pivots.iter().enumerate() {
            coeffs[col] = rows[i][k].clone();
        }
        let x = self.source.from_coeffs(&coeffs);
        debug_assert!(self.apply(&x) == *y);
        Some(x)
    }
}
