use gradedkernel::field::{FieldSpec, Scalar};
use gradedkernel::groebner::{groebner_basis, syzygies};
use gradedkernel::koszul::hilbert_function_la;
use gradedkernel::linalg;
use gradedkernel::module::PresentedModule;
use gradedkernel::monomial::Monomial;
use gradedkernel::order::ModuleOrder;
use gradedkernel::poly::Polynomial;
use gradedkernel::ring::RingContext;
use gradedkernel::vector::Vector;
use proptest::prelude::*;

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::default()), Just(FieldSpec::Rationals), Just(FieldSpec::Prime(7))]
}

fn poly(field: FieldSpec, n: usize, max_deg: u16) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), -6i64..=6), 0..5).prop_map(move |ts| {
        let terms = ts
            .into_iter()
            .map(|(e, c)| (Monomial::new(&e), field.from_i64(c)))
            .collect();
        Polynomial::from_terms(&field, terms)
    })
}

/// A homogeneous form of degree `1..=3` in `n` variables.
fn form(field: FieldSpec, n: usize) -> impl Strategy<Value = Polynomial> {
    (1u32..=3).prop_flat_map(move |d| {
        let mons = Monomial::all_of_degree(n, d);
        let len = mons.len();
        prop::collection::vec((0..len, -4i64..=4), 1..4).prop_map(move |picks| {
            let terms = picks
                .into_iter()
                .map(|(k, c)| (mons[k].clone(), field.from_i64(c)))
                .collect();
            Polynomial::from_terms(&field, terms)
        })
    })
}

fn ideal(field: FieldSpec, n: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(form(field, n), 1..4)
        .prop_map(|gs| gs.into_iter().filter(|g| !g.is_zero()).collect::<Vec<_>>())
        .prop_filter("nonzero ideal", |gs| !gs.is_empty())
}

fn triple() -> impl Strategy<Value = (FieldSpec, Polynomial, Polynomial, Polynomial)> {
    fields().prop_flat_map(|f| (Just(f), poly(f, 3, 3), poly(f, 3, 3), poly(f, 3, 3)))
}

fn canonical(field: &FieldSpec, p: &Polynomial) -> bool {
    let t = p.terms();
    t.windows(2).all(|w| w[0].0 > w[1].0) && t.iter().all(|(_, c)| !c.is_zero() && field.contains(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn ring_axioms((field, f, g, h) in triple()) {
        let fg = f.mul(&field, &g);
        prop_assert!(canonical(&field, &fg));
        prop_assert_eq!(fg.clone(), g.mul(&field, &f));
        prop_assert_eq!(f.add(&field, &g), g.add(&field, &f));
        prop_assert_eq!(fg.mul(&field, &h), f.mul(&field, &g.mul(&field, &h)));
        prop_assert_eq!(f.add(&field, &g).add(&field, &h), f.add(&field, &g.add(&field, &h)));
        prop_assert_eq!(
            f.mul(&field, &g.add(&field, &h)),
            fg.add(&field, &f.mul(&field, &h))
        );
        prop_assert!(f.sub(&field, &f).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_idempotent(
        (field, gens, f) in fields().prop_flat_map(|fl| (Just(fl), ideal(fl, 3), poly(fl, 3, 4)))
    ) {
        let s = RingContext::polynomial_ring(&NAMES[..3], field);
        let r = s.quotient_ring(&gens).unwrap();
        let once = r.normal_form(&f);
        prop_assert_eq!(r.normal_form(&once), once.clone());
        // f - NF(f) lies in the ideal: its normal form vanishes
        prop_assert!(r.normal_form(&f.sub(&field, &once)).is_zero());
    }

    #[test]
    fn groebner_bases_certify_and_keep_hilbert_function(
        (field, gens) in fields().prop_flat_map(|fl| (Just(fl), ideal(fl, 3)))
    ) {
        let order = ModuleOrder::top(vec![0]);
        let vs: Vec<Vector> = gens.iter().map(|g| Vector::from_components(&field, &order, &[g.clone()])).collect();
        let gb = groebner_basis(&field, &[0], &vs, &[]).unwrap();
        prop_assert!(gb.certify(&field));
        let again = groebner_basis(&field, &[0], &vs, &[]).unwrap();
        prop_assert_eq!(&gb.elements, &again.elements);
        let s = RingContext::polynomial_ring(&NAMES[..3], field);
        let m = PresentedModule::cyclic(s, &gens).unwrap();
        prop_assert_eq!(m.hilbert_function(0, 8), hilbert_function_la(&m, 0, 8));
    }

    #[test]
    fn syzygies_are_exact(
        (field, gens) in fields().prop_flat_map(|fl| (Just(fl), ideal(fl, 3)))
    ) {
        let n = 3;
        let order = ModuleOrder::top(vec![0]);
        let cols: Vec<Vector> = gens.iter().map(|g| Vector::from_components(&field, &order, &[g.clone()])).collect();
        let src: Vec<i32> = gens.iter().map(|g| g.degree().unwrap() as i32).collect();
        let syz = syzygies(&field, n, &[0], &cols, &src, &[]).unwrap();
        let r = gens.len();
        for s in &syz {
            let comps = s.components(&field, r);
            let mut total = Polynomial::zero();
            for (c, g) in comps.iter().zip(&gens) {
                total = total.add(&field, &c.mul(&field, g));
            }
            prop_assert!(total.is_zero());
        }
        // degreewise: dim ker = dim span of syzygy multiples
        for d in 0..=6i32 {
            let keys: Vec<(Monomial, usize)> = (0..r)
                .filter(|&k| d >= src[k])
                .flat_map(|k| Monomial::all_of_degree(n, (d - src[k]) as u32).into_iter().map(move |m| (m, k)))
                .collect();
            let tgt = Monomial::all_of_degree(n, d as u32);
            let image: Vec<Vec<Scalar>> = keys
                .iter()
                .map(|(m, k)| {
                    let p = gens[*k].mul_term(&field, m, &field.one());
                    let mut row = vec![field.zero(); tgt.len()];
                    for (mm, c) in p.terms() {
                        row[tgt.iter().position(|t| t == mm).unwrap()] = c.clone();
                    }
                    row
                })
                .collect();
            let kernel = keys.len() - linalg::rank(&field, &image, tgt.len());
            let mut span = Vec::new();
            for s in &syz {
                let ds = s.degree(&src).unwrap();
                if ds > d {
                    continue;
                }
                for m in Monomial::all_of_degree(n, (d - ds) as u32) {
                    let v = s.mul_term(&field, &m, &field.one());
                    let mut row = vec![field.zero(); keys.len()];
                    for t in v.terms() {
                        row[keys.iter().position(|(km, kc)| *km == t.mon && *kc == t.comp).unwrap()] = t.coeff.clone();
                    }
                    span.push(row);
                }
            }
            prop_assert_eq!(linalg::rank(&field, &span, keys.len()), kernel, "degree {}", d);
        }
    }
}

#[test]
fn degrevlex_is_a_monomial_well_order() {
    for n in 1..=4 {
        let mut all: Vec<Monomial> = (0..=6).flat_map(|d| Monomial::all_of_degree(n, d)).collect();
        all.sort();
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
            assert!(w[0].degree() <= w[1].degree());
        }
        assert!(all[0].is_one());
        // compatible with multiplication by each variable
        for w in all.windows(2) {
            for i in 0..n {
                let x = Monomial::var(n, i);
                assert!(w[0].mul(&x) < w[1].mul(&x));
            }
        }
    }
}
