//! Example modules: the three worked examples, structural baselines, and
//! seeded random monomial ideals and binomial hypersurfaces.

use gradedkernel::module::PresentedModule;
use gradedkernel::{FieldSpec, Monomial, Polynomial, Result, Ring, RingContext};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::printed::{self, PrintedRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PrintedExample,
    Baseline,
    Generated,
}

/// A cyclic module `M = S/I` over a polynomial ring `S`. The same ideal
/// defines the ring `R = S/I` for ring-level claims.
#[derive(Clone, Debug)]
pub struct ExampleCase {
    pub id: String,
    pub provenance: Provenance,
    pub ring: Ring,
    pub ideal: Vec<Polynomial>,
    pub printed: Option<PrintedRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub id: String,
    pub provenance: Provenance,
    pub variables: Vec<String>,
    pub ideal: Vec<String>,
}

impl ExampleCase {
    pub fn new(id: impl Into<String>, provenance: Provenance, ring: Ring, ideal: Vec<Polynomial>) -> Self {
        ExampleCase {
            id: id.into(),
            provenance,
            ring,
            ideal,
            printed: None,
        }
    }

    pub fn module(&self) -> Result<PresentedModule> {
        PresentedModule::cyclic(self.ring.clone(), &self.ideal)
    }

    pub fn quotient_ring(&self) -> Result<Ring> {
        if self.ideal.is_empty() {
            Ok(self.ring.clone())
        } else {
            self.ring.quotient_ring(&self.ideal)
        }
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_monomial(&self) -> bool {
        self.ideal.iter().all(|f| f.is_monomial())
    }

    pub fn summary(&self) -> CaseSummary {
        CaseSummary {
            id: self.id.clone(),
            provenance: self.provenance,
            variables: self.ring.vars().to_vec(),
            ideal: self.ideal.iter().map(|f| self.ring.format(f)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusParams {
    /// Largest number of variables; each case draws from `2..=n`.
    pub n: usize,
    pub max_deg: u32,
    pub count: usize,
    /// How many of the `count` cases are binomial hypersurfaces in three
    /// variables rather than monomial ideals.
    pub binomials: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            n: 4,
            max_deg: 3,
            count: 15,
            binomials: 0,
        }
    }
}

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn ring(n: usize, field: FieldSpec) -> Ring {
    RingContext::polynomial_ring(&NAMES[..n], field)
}

/// The worked examples and baselines, in a fixed order.
pub fn builtin_cases(field: FieldSpec) -> Vec<ExampleCase> {
    let s2 = ring(2, field);
    let s3 = ring(3, field);
    let m2 = |e: &[u16]| s2.monomial(e);
    let m3 = |e: &[u16]| s3.monomial(e);
    let cone = s3.sub(&m3(&[1, 1, 0]), &m3(&[0, 0, 2]));

    let mut xy = ExampleCase::new("printed-xy", Provenance::PrintedExample, s2.clone(), vec![m2(&[1, 1])]);
    xy.printed = Some(printed::xy_record(&s2));
    let mut hyp = ExampleCase::new("printed-hypersurface", Provenance::PrintedExample, s3.clone(), vec![cone.clone()]);
    hyp.printed = Some(printed::hypersurface_record(&s3));
    let mut ncm = ExampleCase::new(
        "printed-non-cm",
        Provenance::PrintedExample,
        s3.clone(),
        vec![m3(&[1, 0, 1]), m3(&[0, 1, 1])],
    );
    ncm.printed = Some(printed::non_cm_record(&s3));

    let b = Provenance::Baseline;
    vec![
        xy,
        hyp,
        ncm,
        ExampleCase::new("free-plane", b, s2.clone(), vec![]),
        ExampleCase::new("free-space", b, s3.clone(), vec![]),
        ExampleCase::new("residue-field", b, s3.clone(), (0..3).map(|i| s3.var(i)).collect()),
        ExampleCase::new("squares", b, s3.clone(), vec![m3(&[2, 0, 0]), m3(&[0, 2, 0])]),
        ExampleCase::new(
            "complete-intersection",
            b,
            s3.clone(),
            vec![cone, s3.sub(&m3(&[2, 0, 0]), &m3(&[0, 1, 1]))],
        ),
        ExampleCase::new(
            "maximal-square",
            b,
            s2.clone(),
            vec![m2(&[2, 0]), m2(&[1, 1]), m2(&[0, 2])],
        ),
        ExampleCase::new("embedded", b, s2.clone(), vec![m2(&[2, 0]), m2(&[1, 1])]),
    ]
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> Monomial {
    let mut e = vec![0u16; n];
    for _ in 0..deg {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(&e)
}

fn minimal_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    let keep: Vec<Monomial> = gens
        .iter()
        .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
        .cloned()
        .collect();
    keep
}

/// Deterministic random cases: monomial ideals first, then binomial
/// hypersurfaces. Every ideal is homogeneous by construction and checked.
pub fn corpus_generate(seed: u64, params: CorpusParams, field: FieldSpec) -> Vec<ExampleCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_max = params.n.clamp(2, 4);
    let max_deg = params.max_deg.clamp(1, 3);
    let binomials = params.binomials.min(params.count);
    let mut out = Vec::with_capacity(params.count);
    for k in 0..params.count - binomials {
        let n = rng.gen_range(2..=n_max);
        let s = ring(n, field);
        let ngens = rng.gen_range(1..=n + 1);
        let gens: Vec<Monomial> = (0..ngens)
            .map(|_| {
                let d = rng.gen_range(1..=max_deg);
                random_monomial(&mut rng, n, d)
            })
            .collect();
        let ideal = minimal_monomials(gens)
            .into_iter()
            .map(|m| Polynomial::monomial(&field, m))
            .collect();
        out.push(ExampleCase::new(format!("gen-{seed}-{k:02}"), Provenance::Generated, s, ideal));
    }
    let s = ring(3, field);
    for k in 0..binomials {
        let d = rng.gen_range(2..=max_deg.max(2));
        let a = random_monomial(&mut rng, 3, d);
        let mut b = random_monomial(&mut rng, 3, d);
        while b == a {
            b = random_monomial(&mut rng, 3, d);
        }
        let f = Polynomial::monomial(&field, a).sub(&field, &Polynomial::monomial(&field, b));
        out.push(ExampleCase::new(
            format!("gen-{seed}-b{k:02}"),
            Provenance::Generated,
            s.clone(),
            vec![f],
        ));
    }
    for case in &out {
        debug_assert!(case.ideal.iter().all(|f| f.is_homogeneous().0));
    }
    out
}

/// Built-in cases followed by `params.count` generated ones.
pub fn corpus(seed: u64, params: CorpusParams, field: FieldSpec) -> Vec<ExampleCase> {
    let mut cases = builtin_cases(field);
    cases.extend(corpus_generate(seed, params, field));
    cases
}

/// The 25-case corpus used by the acceptance runs.
pub fn default_corpus(seed: u64, field: FieldSpec) -> Vec<ExampleCase> {
    corpus(seed, CorpusParams::default(), field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible() {
        let p = CorpusParams {
            n: 3,
            max_deg: 3,
            count: 10,
            binomials: 3,
        };
        let a: Vec<CaseSummary> = corpus_generate(42, p, FieldSpec::default()).iter().map(|c| c.summary()).collect();
        let b: Vec<CaseSummary> = corpus_generate(42, p, FieldSpec::default()).iter().map(|c| c.summary()).collect();
        assert_eq!(a.len(), 10);
        assert_eq!(a, b);
    }

    #[test]
    fn zero_count_gives_builtins() {
        let p = CorpusParams {
            count: 0,
            ..CorpusParams::default()
        };
        let c = corpus(0, p, FieldSpec::default());
        assert_eq!(c.len(), 10);
        assert_eq!(c.iter().filter(|c| c.provenance == Provenance::PrintedExample).count(), 3);
    }
}
