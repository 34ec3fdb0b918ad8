//! Hilbert series of monomial modules `⊕ S(-d_c)/I_c`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::monomial::Monomial;

/// `numerator(t) / (1 - t)^denominator_exponent`, numerator a Laurent
/// polynomial (twists may be negative).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: BTreeMap<i32, i64>,
    pub denominator_exponent: usize,
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn poly_sub_shifted(a: &mut BTreeMap<i32, i64>, b: &BTreeMap<i32, i64>, shift: i32) {
    for (e, c) in b {
        *a.entry(e + shift).or_insert(0) -= c;
    }
    a.retain(|_, c| *c != 0);
}

fn minimize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| m.degree());
    sorted.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of the Hilbert series of `S/I` for a monomial ideal `I`,
/// by the recursion `N(I + (m)) = N(I) - t^deg(m) N(I : m)`.
pub fn monomial_ideal_numerator(gens: &[Monomial]) -> BTreeMap<i32, i64> {
    let gens = minimize(gens);
    let mut out = BTreeMap::new();
    if gens.iter().any(|g| g.is_one()) {
        return out;
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        out.insert(0, 1);
        for g in &gens {
            let mut next = out.clone();
            poly_sub_shifted(&mut next, &out, g.degree() as i32);
            out = next;
        }
        return out;
    }
    // pivot on the generator of largest degree
    let (last, rest) = gens.split_last().unwrap();
    let colon: Vec<Monomial> = rest.iter().map(|m| m.gcd(last).quotient_of(m)).collect();
    let mut a = monomial_ideal_numerator(rest);
    let b = monomial_ideal_numerator(&colon);
    poly_sub_shifted(&mut a, &b, last.degree() as i32);
    a
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        HilbertSeries {
            numerator: BTreeMap::new(),
            denominator_exponent: nvars,
        }
    }

    /// Series of `⊕_c S(-degrees[c]) / I_c` where `I_c` is generated by
    /// the lead monomials in component `c`.
    pub fn of_monomial_module(nvars: usize, degrees: &[i32], leads: &[(Monomial, usize)]) -> Self {
        let mut numerator = BTreeMap::new();
        for (c, d) in degrees.iter().enumerate() {
            let gens: Vec<Monomial> = leads
                .iter()
                .filter(|(_, k)| *k == c)
                .map(|(m, _)| m.clone())
                .collect();
            for (e, coef) in monomial_ideal_numerator(&gens) {
                *numerator.entry(e + d).or_insert(0) += coef;
            }
        }
        numerator.retain(|_, c| *c != 0);
        HilbertSeries {
            numerator,
            denominator_exponent: nvars,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// `dim_k M_d`.
    pub fn value(&self, d: i32) -> i64 {
        let n = self.denominator_exponent as i64;
        self.numerator
            .iter()
            .filter(|(e, _)| **e <= d)
            .map(|(e, c)| {
                let k = (d - e) as i64;
                if n == 0 {
                    if k == 0 {
                        *c
                    } else {
                        0
                    }
                } else {
                    c * binomial(k + n - 1, n - 1)
                }
            })
            .sum()
    }

    /// Numerator with all factors `(1 - t)` cancelled, and the remaining
    /// denominator exponent.
    pub fn reduced(&self) -> (BTreeMap<i32, i64>, usize) {
        let mut num = self.numerator.clone();
        let mut k = self.denominator_exponent;
        while k > 0 && !num.is_empty() && num.values().sum::<i64>() == 0 {
            // synthetic division by (1 - t)
            let lo = *num.keys().next().unwrap();
            let hi = *num.keys().last().unwrap();
            let mut q = BTreeMap::new();
            let mut carry = 0i64;
            for e in lo..hi {
                carry += num.get(&e).copied().unwrap_or(0);
                if carry != 0 {
                    q.insert(e, carry);
                }
            }
            num = q;
            k -= 1;
        }
        (num, k)
    }

    /// Krull dimension: order of the pole at `t = 1`; `-1` for zero.
    pub fn dimension(&self) -> i32 {
        if self.is_zero() {
            return -1;
        }
        self.reduced().1 as i32
    }

    /// Total dimension when finite (dimension ≤ 0).
    pub fn length(&self) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        let (num, k) = self.reduced();
        if k == 0 {
            Some(num.values().sum())
        } else {
            None
        }
    }

    /// Multiplicity (leading coefficient of the reduced numerator at 1).
    pub fn multiplicity(&self) -> i64 {
        self.reduced().0.values().sum()
    }

    /// Lowest degree with a nonzero piece.
    pub fn initial_degree(&self) -> Option<i32> {
        self.numerator.keys().next().copied()
    }
}
