//! Dense exact linear algebra: row echelon forms, ranks, kernels.
//!
//! Prime fields run on machine words; the rationals on `BigRational`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{FieldSpec, Scalar};

trait LinField {
    type E: Clone;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a - f*b`
    fn sub_mul(&self, a: &Self::E, f: &Self::E, b: &Self::E) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Self::E;
}

struct ModP(u64);

impl LinField for ModP {
    type E = u32;
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u32) -> u32 {
        let (mut base, mut exp, mut acc) = (*a as u64, self.0 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            exp >>= 1;
        }
        acc as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (*a as u64 * *b as u64 % self.0) as u32
    }
    fn sub_mul(&self, a: &u32, f: &u32, b: &u32) -> u32 {
        let p = self.0;
        ((*a as u64 + p - (*f as u64 * *b as u64 % p)) % p) as u32
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Residue(*a)
    }
    fn from_scalar(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Residue(x) => *x,
            Scalar::Rational(_) => panic!("rational scalar in a prime field matrix"),
        }
    }
}

struct Rat;

impl LinField for Rat {
    type E = BigRational;
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub_mul(&self, a: &BigRational, f: &BigRational, b: &BigRational) -> BigRational {
        a - f * b
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(r) => r.clone(),
            Scalar::Residue(_) => panic!("residue in a rational matrix"),
        }
    }
}

/// Reduced row echelon form of a set of row vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn rref<F: LinField>(f: &F, mut rows: Vec<Vec<F::E>>, ncols: usize) -> (Vec<Vec<F::E>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        for x in rows[r].iter_mut().skip(c) {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for k in c..ncols {
                if !f.is_zero(&pivot_row[k]) {
                    row[k] = f.sub_mul(&row[k], &factor, &pivot_row[k]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn run_rref(field: &FieldSpec, rows: &[Vec<Scalar>], ncols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    match field {
        FieldSpec::Prime(p) => {
            let f = ModP(*p as u64);
            let conv = rows.iter().map(|r| r.iter().map(|s| f.from_scalar(s)).collect()).collect();
            let (out, piv) = rref(&f, conv, ncols);
            (
                out.into_iter()
                    .map(|r| r.iter().map(|x| f.to_scalar(x)).collect())
                    .collect(),
                piv,
            )
        }
        FieldSpec::Rationals => {
            let f = Rat;
            let conv = rows.iter().map(|r| r.iter().map(|s| f.from_scalar(s)).collect()).collect();
            let (out, piv) = rref(&f, conv, ncols);
            (
                out.into_iter()
                    .map(|r| r.iter().map(|x| f.to_scalar(x)).collect())
                    .collect(),
                piv,
            )
        }
    }
}

fn rank_impl<F: LinField>(f: &F, mut rows: Vec<Vec<F::E>>, ncols: usize) -> usize {
    // forward elimination only
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        let (top, bottom) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.mul(&row[c], &inv);
            for k in c..ncols {
                if !f.is_zero(&pivot_row[k]) {
                    row[k] = f.sub_mul(&row[k], &factor, &pivot_row[k]);
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the matrix whose rows are given.
pub fn rank(field: &FieldSpec, rows: &[Vec<Scalar>], ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    match field {
        FieldSpec::Prime(p) => {
            let f = ModP(*p as u64);
            rank_impl(&f, rows.iter().map(|r| r.iter().map(|s| f.from_scalar(s)).collect()).collect(), ncols)
        }
        FieldSpec::Rationals => {
            let f = Rat;
            rank_impl(&f, rows.iter().map(|r| r.iter().map(|s| f.from_scalar(s)).collect()).collect(), ncols)
        }
    }
}

impl Echelon {
    pub fn new(field: &FieldSpec, rows: &[Vec<Scalar>], ncols: usize) -> Self {
        let (rows, pivots) = if rows.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            run_rref(field, rows, ncols)
        };
        Echelon {
            field: *field,
            ncols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Columns that are not pivots: a basis of the quotient of the ambient
    /// space by the row space.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the row space; the result vanishes on pivots.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (k, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    out[k] = f.sub(&out[k], &f.mul(&factor, x));
                }
            }
        }
        out
    }
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn kernel(field: &FieldSpec, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let ech = Echelon::new(field, rows, ncols);
    let mut out = Vec::new();
    for free in ech.free_columns() {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            v[p] = field.neg(&row[free]);
        }
        out.push(v);
    }
    out
}

/// Transposes a dense matrix given by rows.
pub fn transpose(field: &FieldSpec, rows: &[Vec<Scalar>], ncols: usize) -> Vec<Vec<Scalar>> {
    let mut out = vec![vec![field.zero(); rows.len()]; ncols];
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            out[j][i] = x.clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: &FieldSpec, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect()
    }

    #[test]
    fn rank_both_fields() {
        for f in [FieldSpec::Prime(7), FieldSpec::Rationals] {
            let a = mat(&f, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
            assert_eq!(rank(&f, &a, 3), 2);
            assert_eq!(Echelon::new(&f, &a, 3).rank(), 2);
        }
        // characteristic matters
        let f = FieldSpec::Prime(2);
        assert_eq!(rank(&f, &mat(&f, &[&[1, 1], &[1, -1]]), 2), 1);
        assert_eq!(rank(&FieldSpec::Rationals, &mat(&FieldSpec::Rationals, &[&[1, 1], &[1, -1]]), 2), 2);
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = FieldSpec::Rationals;
        let a = mat(&f, &[&[1, 2, 3, 4], &[0, 1, 1, 1]]);
        let k = kernel(&f, &a, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &a {
                let dot = r.iter().zip(v).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn reduce_against_row_space() {
        let f = FieldSpec::Prime(101);
        let e = Echelon::new(&f, &mat(&f, &[&[1, 1, 0]]), 3);
        let r = e.reduce(&mat(&f, &[&[2, 3, 5]])[0]);
        assert_eq!(r, mat(&f, &[&[0, 1, 5]])[0]);
        assert_eq!(e.free_columns(), vec![1, 2]);
    }
}
