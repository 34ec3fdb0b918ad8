//! Structural identities checked on every corpus module.

use std::collections::BTreeMap;

use gkverify::{default_corpus, ExampleCase};
use gradedkernel::cohomology;
use gradedkernel::invariants;
use gradedkernel::koszul;
use gradedkernel::linalg;
use gradedkernel::module::PresentedModule;
use gradedkernel::resolution::{self, FreeResolution};
use gradedkernel::{FieldSpec, Monomial, Scalar};

fn corpus() -> Vec<ExampleCase> {
    default_corpus(0, FieldSpec::default())
}

fn nonzero(m: BTreeMap<i32, i64>) -> BTreeMap<i32, i64> {
    m.into_iter().filter(|(_, v)| *v != 0).collect()
}

#[test]
fn betti_tables_match_koszul_homology() {
    for case in corpus() {
        let m = case.module().unwrap();
        let (lo, hi) = koszul::default_window(&m);
        let betti = resolution::betti_table(&m, m.nvars() + 1).unwrap();
        let inside: BTreeMap<(usize, i32), u64> = betti
            .entries
            .iter()
            .filter(|((_, j), v)| (lo..=hi).contains(j) && **v != 0)
            .map(|(k, v)| (*k, *v))
            .collect();
        assert_eq!(inside.len(), betti.entries.values().filter(|v| **v != 0).count(), "{}", case.id);
        assert_eq!(inside, koszul::koszul_betti(&m, lo, hi), "{}", case.id);
    }
}

/// `rank (d: F_{i+1} → F_i)` in internal degree `j`.
fn degree_rank(res: &FreeResolution, i: usize, j: i32) -> usize {
    let n = res.ring.nvars();
    let field = *res.ring.field();
    let target = &res.degrees[i];
    let keys: Vec<(Monomial, usize)> = target
        .iter()
        .enumerate()
        .filter(|(_, d)| j >= **d)
        .flat_map(|(c, d)| Monomial::all_of_degree(n, (j - d) as u32).into_iter().map(move |m| (m, c)))
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (col, d) in res.maps[i].iter().zip(&res.degrees[i + 1]) {
        if j < *d {
            continue;
        }
        for u in Monomial::all_of_degree(n, (j - d) as u32) {
            let mut row = vec![field.zero(); keys.len()];
            for (c, p) in col.iter().enumerate() {
                for (m, x) in p.terms() {
                    let key = (m.mul(&u), c);
                    let k = keys.iter().position(|k| *k == key).unwrap();
                    row[k] = field.add(&row[k], x);
                }
            }
            rows.push(row);
        }
    }
    linalg::rank(&field, &rows, keys.len())
}

fn free_dim(res: &FreeResolution, i: usize, j: i32) -> usize {
    let n = res.ring.nvars();
    res.degrees[i]
        .iter()
        .filter(|d| j >= **d)
        .map(|d| Monomial::all_of_degree(n, (j - d) as u32).len())
        .sum()
}

#[test]
fn resolutions_are_exact_minimal_complexes() {
    for case in corpus() {
        let m = case.module().unwrap();
        let res = resolution::minimal_resolution(&m, m.nvars() + 1).unwrap();
        assert!(res.check_complex(), "{}", case.id);
        assert!(res.is_minimal(), "{}", case.id);
        assert!(!res.truncated);
        let hf = m.hilbert_function(0, 8);
        for j in 0..=8 {
            let r1 = if res.length() >= 1 { degree_rank(&res, 0, j) } else { 0 };
            assert_eq!((free_dim(&res, 0, j) - r1) as i64, hf[j as usize].1, "{} j={j}", case.id);
            for i in 1..res.length() {
                let sum = degree_rank(&res, i - 1, j) + degree_rank(&res, i, j);
                assert_eq!(sum, free_dim(&res, i, j), "{} i={i} j={j}", case.id);
            }
        }
        // minimal number of generators from the scalar part of the relations
        let units = resolution::unit_rank(m.ring().field(), m.relations(), m.rank());
        assert_eq!(res.rank(0), m.rank() - units);
        let betti = res.betti_table();
        assert_eq!(
            nonzero(betti.alternating_numerator()),
            nonzero(m.hilbert_series().numerator.clone()),
            "{}",
            case.id
        );
        assert_eq!(m.hilbert_series().denominator_exponent, m.nvars());
    }
}

#[test]
fn auslander_buchsbaum_and_depth_bounds() {
    for case in corpus() {
        let m = case.module().unwrap();
        let n = m.nvars();
        let pd = invariants::projdim(&m, n + 1).unwrap();
        assert!(pd.is_finite());
        let depth = invariants::depth(&m).unwrap();
        assert_eq!(depth + pd.value(), n, "{}", case.id);
        let (lo, hi) = koszul::default_window(&m);
        assert_eq!(invariants::depth_koszul(&m, lo, hi).unwrap(), depth, "{}", case.id);
        assert!(depth as i32 <= m.krull_dim());
        let bass = invariants::bass_numbers(&m, n).unwrap();
        let first = bass.values.iter().position(|v| *v != 0);
        assert_eq!(first, Some(depth), "{}", case.id);
    }
}

#[test]
fn ext_into_the_ring_vanishes_outside_codim_to_n() {
    for case in corpus() {
        let m = case.module().unwrap();
        let n = m.nvars();
        let s = PresentedModule::free(m.ring().clone(), vec![0]);
        let codim = n - m.krull_dim() as usize;
        let pd = invariants::projdim_ambient(&m).unwrap();
        for i in 0..=n + 1 {
            let e = invariants::ext_presentation(&m, &s, i).unwrap();
            if i < codim || i > n {
                assert!(e.is_zero(), "{} Ext^{i}", case.id);
            }
            if i == codim || i == pd {
                assert!(!e.is_zero(), "{} Ext^{i}", case.id);
            }
        }
    }
}

#[test]
fn hypersurface_canonical_modules_are_shifted_rings() {
    for case in corpus().into_iter().filter(|c| c.ideal.len() == 1) {
        let r = case.quotient_ring().unwrap();
        let omega = invariants::canonical_module(&r).unwrap();
        let n = case.nvars() as i32;
        let a = case.ideal[0].degree().unwrap() as i32 - n;
        assert_eq!(omega.rank(), 1, "{}", case.id);
        assert_eq!(omega.degrees(), &[-a]);
        let m = case.module().unwrap();
        let lhs: Vec<i64> = omega.hilbert_function(-a, -a + 8).into_iter().map(|x| x.1).collect();
        let rhs: Vec<i64> = m.hilbert_function(0, 8).into_iter().map(|x| x.1).collect();
        assert_eq!(lhs, rhs, "{}", case.id);
    }
}

#[test]
fn associated_primes_cover_exactly_the_zerodivisor_variables() {
    for case in corpus().into_iter().filter(|c| c.is_monomial()) {
        let m = case.module().unwrap();
        let n = m.nvars();
        let primes = invariants::associated_primes_monomial(&m).unwrap();
        let mut union: Vec<usize> = primes.primes.iter().flat_map(|p| p.variables.clone()).collect();
        union.sort();
        union.dedup();
        let gens = m.monomial_ideal().unwrap();
        let in_ideal = |u: &Monomial| gens.iter().any(|g| g.divides(u));
        let bound = gens.iter().map(|g| g.degree()).max().unwrap_or(0) * n as u32;
        let mut zd = Vec::new();
        for k in 0..n {
            let x = Monomial::var(n, k);
            let hit = (0..=bound).any(|d| {
                Monomial::all_of_degree(n, d)
                    .iter()
                    .any(|u| !in_ideal(u) && in_ideal(&u.mul(&x)))
            });
            if hit {
                zd.push(k);
            }
        }
        assert_eq!(union, zd, "{}", case.id);
        for p in &primes.primes {
            let w = Monomial::new(&p.witness);
            assert!(!in_ideal(&w));
            let colon = invariants::monomial_colon(&gens, &w);
            let vars: Vec<usize> = colon.iter().map(|c| c.support()[0]).collect();
            let mut vars = vars;
            vars.sort();
            assert_eq!(vars, p.variables);
        }
    }
}

#[test]
fn duality_matches_cech_on_every_case() {
    for case in corpus() {
        let m = case.module().unwrap();
        let (lo, hi) = cohomology::default_window(&m).unwrap();
        let dual = cohomology::local_cohomology_table(&m, lo, hi).unwrap();
        let cech = cohomology::cech_table(&m, lo, hi).unwrap();
        assert_eq!(dual, cech, "{}", case.id);
    }
}

#[test]
fn grothendieck_vanishing_and_nonvanishing() {
    for case in corpus() {
        let m = case.module().unwrap();
        let depth = invariants::depth(&m).unwrap();
        let dim = m.krull_dim() as usize;
        let duals = cohomology::duality_modules(&m).unwrap();
        let support = cohomology::cohomology_support(&duals);
        for (i, nz) in support.nonzero.iter().enumerate() {
            assert_eq!(*nz && (i < depth || i > dim), false, "{} i={i}", case.id);
        }
        assert!(support.nonzero[depth] && support.nonzero[dim], "{}", case.id);
        let (lo, hi) = cohomology::default_window(&m).unwrap();
        let table = cohomology::table_from_duals(&duals, lo, hi);
        assert!(table.nonzero_indices().iter().all(|i| (depth..=dim).contains(i)));
    }
}

#[test]
fn literal_towers_collapse_to_truncations() {
    for case in corpus() {
        let m = case.module().unwrap();
        let vars: Vec<_> = (0..m.nvars()).map(|i| case.ring.var(i)).collect();
        let (lo, hi) = cohomology::default_tower_window(&m, &vars, 4);
        let tower = cohomology::formal_tower(&m, &vars, 4, lo, hi).unwrap();
        let mut prev: Option<&cohomology::TowerStage> = None;
        for st in &tower.stages {
            assert!(st.support.nonzero.iter().skip(1).all(|nz| !nz), "{}", case.id);
            assert_eq!(st.table.total(0) as i64, st.length.unwrap(), "{} t={}", case.id, st.t);
            if let Some(p) = prev {
                for j in lo..=hi {
                    assert!(p.table.get(0, j) <= st.table.get(0, j));
                }
            }
            prev = Some(st);
        }
    }
}

#[test]
fn top_cohomology_of_polynomial_rings() {
    for case in corpus().into_iter().filter(|c| c.ideal.is_empty()) {
        let m = case.module().unwrap();
        let n = m.nvars() as i64;
        let t = cohomology::local_cohomology_table(&m, -9, 3).unwrap();
        for j in -9..=3i64 {
            let expect = if j <= -n {
                (1..n).map(|k| (-j - 1 - (k - 1)) as u64).product::<u64>() / (1..n).product::<i64>() as u64
            } else {
                0
            };
            assert_eq!(t.get(n as usize, j as i32), expect, "{} j={j}", case.id);
        }
        assert_eq!(t.nonzero_indices(), vec![n as usize]);
    }
}
