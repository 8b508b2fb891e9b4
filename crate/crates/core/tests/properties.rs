//! Property suites for the invariants of every module.

use itertools::Itertools;
use proptest::prelude::*;

use prelie::algebra::{check_pre_lie, jacobi_holds, Algebra};
use prelie::cochain::{
    bidegree_of, delta_matrix, horizontal_lift, mn_bracket, partial_matrix, partial_via_components, partial_via_mn,
    Bidegree, Block, BlockMap, BlockShape, BimoduleCochain, Cochain,
};
use prelie::corpus_algebras::{a2, a3a, a3h, a3n};
use prelie::linalg::RationalSampler;
use prelie::operators::{
    check_deformation_pair, check_nijenhuis, check_nijenhuis_structure, check_o_operator, check_on_structure,
    check_rota_baxter, compare_products, deformed_product, direct_sum, OnStructure,
};
use prelie::scenario::{corpus_entries, run_corpus, Scenario};
use prelie::search::{enumerate_operators, solve_cocycle_space, SearchConfig, Target};
use prelie::structures::{check_hn, check_kvb, check_kvn, check_s_matrix, r_hierarchy, SymForm2, SymTensor2};
use prelie::twilled::{
    bracket_mu2, check_rb_strong_mc, check_strong_mc, d_mu1, make_twilled, mc_from_on, on_from_mc,
    twilled_from_o_operator,
};
use prelie::{Bimodule, Error, Matrix, Report, Scalar};

fn q(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| Scalar::ratio(n, d))
}

fn small_int() -> impl Strategy<Value = Scalar> {
    (-2i64..=2).prop_map(q)
}

fn matrix(rows: usize, cols: usize, entry: impl Strategy<Value = Scalar>) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(entry, rows * cols).prop_map(move |v| Matrix::from_fn(rows, cols, |i, j| v[i * cols + j].clone()))
}

fn symmetric(n: usize, entry: impl Strategy<Value = Scalar>) -> impl Strategy<Value = Matrix> {
    matrix(n, n, entry).prop_map(|m| m.add(&m.transpose()))
}

fn corpus_algebra() -> impl Strategy<Value = Algebra> {
    (0usize..4).prop_map(|k| [a2(), a3a(), a3h(), a3n()][k].clone())
}

/// `x ∘ y = P⁻¹(Px · Py)`, isomorphic to `g`.
fn conjugate(g: &Algebra, p: &Matrix) -> Option<Algebra> {
    let inv = p.invert().ok()?;
    Some(Algebra::from_bilinear(g.dim(), |i, j| inv.apply(&g.mul(&p.column(i), &p.column(j)))))
}

/// Random pre-Lie algebras: corpus algebras in a random basis.
fn pre_lie() -> impl Strategy<Value = Algebra> {
    corpus_algebra().prop_flat_map(|g| {
        let n = g.dim();
        matrix(n, n, small_int()).prop_filter_map("singular", move |p| conjugate(&g, &p))
    })
}

fn bimodule() -> impl Strategy<Value = Bimodule> {
    (pre_lie(), any::<bool>()).prop_map(|(g, dual)| {
        let b = Bimodule::regular(&g);
        if dual {
            b.dual().expect("valid")
        } else {
            b
        }
    })
}

/// Adds `k` to one structure constant.
fn mutate(g: &Algebra, at: (usize, usize, usize), k: i64) -> Algebra {
    let mut t = g.products().clone();
    t[at] = t[at].clone() + q(k);
    Algebra::new(t)
}

fn soft(r: prelie::Result<Report>) -> bool {
    match r {
        Ok(r) => r.holds,
        Err(Error::ComponentCheckFailed(_)) => false,
        Err(e) => panic!("{e}"),
    }
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 24, ..ProptestConfig::default() }
}

// linalg

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn nullspace_is_annihilated(m in matrix(3, 4, scalar())) {
        for v in m.nullspace() {
            prop_assert!(m.apply(&v).iter().all(Scalar::is_zero));
        }
        prop_assert_eq!(m.nullspace().len(), 4 - m.rank());
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(3, 3, scalar())) {
        if let Ok(inv) = m.invert() {
            prop_assert_eq!(inv.mul(&m), Matrix::identity(3));
            prop_assert_eq!(m.mul(&inv), Matrix::identity(3));
        } else {
            prop_assert!(m.determinant().unwrap().is_zero());
        }
    }

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a * c);
    }
}

// algebra

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn semidirect_products_are_pre_lie(b in bimodule()) {
        prop_assert!(b.check().holds);
        prop_assert!(b.semidirect_product().unwrap().is_pre_lie());
    }

    #[test]
    fn sub_adjacent_bracket_is_lie(g in pre_lie()) {
        prop_assert!(jacobi_holds(&g.sub_adjacent().unwrap()));
    }

    #[test]
    fn dual_is_a_bimodule_iff_the_bimodule_is(
        b in bimodule(), i in 0usize..3, j in 0usize..3, k in 0usize..3, bump in 0i64..3, right in any::<bool>()
    ) {
        let n = b.base().dim();
        let (i, j, k) = (i % n, j % n, k % n);
        let mut lefts = b.lefts().to_vec();
        let mut rights = b.rights().to_vec();
        let target = if right { &mut rights[i] } else { &mut lefts[i] };
        *target = Matrix::from_fn(n, n, |a, c| {
            let v = target.row(a)[c].clone();
            if (a, c) == (j, k) { v + q(bump) } else { v }
        });
        let mutated = Bimodule::new(b.base().clone(), n, lefts, rights).unwrap();
        prop_assert_eq!(mutated.check().holds, mutated.dual_unchecked().check().holds);
        prop_assert_eq!(mutated.dual_unchecked().dual_unchecked(), mutated);
    }
}

// cochain

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn mn_graded_jacobi(seed in any::<u64>(), dim in 2usize..=3, p in 1usize..=3, r in 1usize..=3, t in 1usize..=3) {
        let mut s = RationalSampler::new(seed, 5);
        let (x, y, z) = (
            Cochain::random(dim, dim, p, &mut s, 60),
            Cochain::random(dim, dim, r, &mut s, 60),
            Cochain::random(dim, dim, t, &mut s, 60),
        );
        let (a, b, c) = (p - 1, r - 1, t - 1);
        let br = |u: &Cochain, v: &Cochain| mn_bracket(u, v).unwrap();
        let anti = br(&x, &y).add(&br(&y, &x).scale(&Scalar::sign(a * b))).unwrap();
        prop_assert!(anti.is_zero());
        let jac = br(&x, &br(&y, &z)).scale(&Scalar::sign(a * c))
            .add(&br(&y, &br(&z, &x)).scale(&Scalar::sign(b * a))).unwrap()
            .add(&br(&z, &br(&x, &y)).scale(&Scalar::sign(c * b))).unwrap();
        prop_assert!(jac.is_zero());
    }

    #[test]
    fn square_zero_iff_pre_lie(g in corpus_algebra(), i in 0usize..3, j in 0usize..3, k in 0usize..3, bump in 0i64..3) {
        let n = g.dim();
        let h = mutate(&g, (i % n, j % n, k % n), bump);
        let pi = Cochain::from_tensor(h.products());
        prop_assert_eq!(mn_bracket(&pi, &pi).unwrap().is_zero(), check_pre_lie(h.products()).holds);
    }

    #[test]
    fn bracket_adds_bidegrees(seed in any::<u64>(), first in 0usize..4, second in 0usize..4) {
        // Shapes of bidegree 1|0 (degree 2) and 0|0 (degree 1) over dims (2, 2).
        let shapes = [
            BlockShape::new(1, 0, Block::G1, Block::G1),
            BlockShape::new(0, 1, Block::G2, Block::G2),
            BlockShape::new(0, 0, Block::G1, Block::G1),
            BlockShape::new(0, 0, Block::G2, Block::G2),
        ];
        let mut s = RationalSampler::new(seed, 5);
        let mut block = |shape: BlockShape| {
            BlockMap::from_fn(2, 2, shape, |_, _, _| (0..2).map(|_| s.next_scalar()).collect())
        };
        let (x, y) = (horizontal_lift(&block(shapes[first])), horizontal_lift(&block(shapes[second])));
        let (bx, by) = (bidegree_of(&x).unwrap(), bidegree_of(&y).unwrap());
        let z = x.bracket(&y).unwrap();
        if !z.cochain.is_zero() {
            prop_assert_eq!(bidegree_of(&z), Some(Bidegree::new(bx.k + by.k, bx.l + by.l)));
        }
    }

    #[test]
    fn partial_routes_agree(b in bimodule(), degree in 1usize..=2, seed in any::<u64>()) {
        let (ng, m) = (b.base().dim(), b.module_dim());
        let mut s = RationalSampler::new(seed, 5);
        let coords: Vec<Scalar> = (0..BimoduleCochain::space_dim(ng, m, degree)).map(|_| s.next_scalar()).collect();
        let phi = BimoduleCochain::from_coords(ng, m, degree, &coords);
        prop_assert_eq!(partial_via_components(&b, &phi).unwrap(), partial_via_mn(&b, &phi).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 6, ..ProptestConfig::default() })]

    #[test]
    fn coboundaries_square_to_zero(b in bimodule()) {
        for n in 1..=2 {
            prop_assert!(delta_matrix(&b, n + 1).mul(&delta_matrix(&b, n)).is_zero());
            prop_assert!(partial_matrix(&b, n + 1).mul(&partial_matrix(&b, n)).is_zero());
        }
    }
}

// operators

fn a2_nijenhuis() -> Vec<Matrix> {
    enumerate_operators(&Target::Nijenhuis(&a2()), &SearchConfig::default()).unwrap()
}

fn nijenhuis_pair() -> impl Strategy<Value = (Algebra, Matrix)> {
    let list = a2_nijenhuis();
    (0..list.len(), matrix(2, 2, small_int()), 1i64..4).prop_filter_map("singular", move |(k, p, c)| {
        let inv = p.invert().ok()?;
        let g = conjugate(&a2(), &p)?;
        Some((g, inv.mul(&list[k]).mul(&p).scale(&q(c))))
    })
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn nijenhuis_deforms_to_pre_lie((g, n) in nijenhuis_pair(), noise in matrix(2, 2, small_int())) {
        for n in [n.clone(), n.add(&noise)] {
            if check_nijenhuis(&g, &n).unwrap().holds {
                let d = deformed_product(&g, &n).unwrap();
                prop_assert!(d.is_pre_lie());
                for (i, j) in (0..2).cartesian_product(0..2) {
                    let (ei, ej) = (Matrix::identity(2).column(i), Matrix::identity(2).column(j));
                    prop_assert_eq!(n.apply(&d.mul(&ei, &ej)), g.mul(&n.apply(&ei), &n.apply(&ej)));
                }
            }
        }
    }

    #[test]
    fn pair_conditions_match_lifted_nijenhuis(
        (g, n) in nijenhuis_pair(), s in matrix(2, 2, small_int()), choice in 0usize..3
    ) {
        let s = match choice { 0 => n.transpose(), 1 => n.clone(), _ => s };
        let reg = Bimodule::regular(&g);
        let dual = reg.dual().unwrap();
        for b in [&reg, &dual] {
            let lifted = b.dual().unwrap().semidirect_product().unwrap();
            prop_assert_eq!(
                check_nijenhuis_structure(b, &n, &s).unwrap().holds,
                check_nijenhuis(&lifted, &direct_sum(&n, &s.transpose())).unwrap().holds
            );
            let lifted = b.semidirect_product().unwrap();
            prop_assert_eq!(
                check_deformation_pair(b, &n, &s).unwrap().holds,
                check_nijenhuis(&lifted, &direct_sum(&n, &s)).unwrap().holds
            );
        }
    }
}

// twilled

/// `(R, Ω)` from the three A3h families at random parameter values.
fn a3h_mc() -> impl Strategy<Value = (Matrix, Matrix)> {
    (0usize..3, proptest::collection::vec(scalar(), 5), 1i64..5).prop_map(|(case, v, r33)| {
        let z = Scalar::zero;
        let m = |rows: [[Scalar; 3]; 3]| Matrix::from_rows(rows.into_iter().map(Vec::from).collect()).unwrap();
        match case {
            0 => (
                m([[z(), z(), z()], [v[0].clone(), v[1].clone(), z()], [v[2].clone(), v[3].clone(), z()]]),
                m([[z(), z(), z()], [z(), z(), z()], [z(), v[4].clone(), z()]]),
            ),
            1 => (
                m([[z(), z(), z()], [z(), z(), z()], [v[0].clone(), v[1].clone(), q(r33)]]),
                m([[z(), z(), z()], [z(), z(), z()], [z(), v[4].clone(), z()]]),
            ),
            _ => (
                m([[z(), z(), z()], [v[0].clone(), z(), z()], [v[1].clone(), v[2].clone(), z()]]),
                m([[z(), z(), z()], [z(), v[3].clone(), z()], [z(), v[4].clone(), v[3].clone()]]),
            ),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn twilled_round_trip((r, _) in a3h_mc()) {
        let tw = twilled_from_o_operator(&Bimodule::regular(&a3h()), &r).unwrap();
        let again = make_twilled(tw.big().clone(), 3).unwrap();
        prop_assert_eq!(again.l1(), tw.l1());
        prop_assert_eq!(again.r1(), tw.r1());
        prop_assert_eq!(again.l2(), tw.l2());
        prop_assert_eq!(again.r2(), tw.r2());
    }

    #[test]
    fn strong_mc_routes_agree((r, omega) in a3h_mc(), noise in matrix(3, 3, small_int()), noisy in any::<bool>()) {
        let g = a3h();
        let omega = if noisy { omega.add(&noise) } else { omega };
        let tw = twilled_from_o_operator(&Bimodule::regular(&g), &r).unwrap();
        let direct = check_strong_mc(&tw, &omega).unwrap();
        let oc = Cochain::from_matrix(&omega);
        let cochain_route = d_mu1(&tw, &oc).unwrap().is_zero() && bracket_mu2(&tw, &oc, &oc).unwrap().is_zero();
        prop_assert_eq!(direct.holds, cochain_route);
        prop_assert!(check_rota_baxter(&g, &r).unwrap().holds);
        prop_assert_eq!(check_rb_strong_mc(&g, &r, &omega).unwrap().holds, direct.holds);
    }

    #[test]
    fn on_products_coincide((r, omega) in a3h_mc()) {
        let (first, second) = on_from_mc(&Bimodule::regular(&a3h()), &r, &omega).unwrap();
        for os in [first, second] {
            prop_assert!(check_on_structure(&os).unwrap().holds);
            let (a, b, c) = (os.s_deformed(), os.star(), os.nt_product());
            prop_assert!(compare_products("·", a.products(), b.products()).holds);
            prop_assert!(compare_products("·", b.products(), c.products()).holds);
        }
    }

    #[test]
    fn mc_on_round_trip_for_invertible_t(a in scalar(), b in scalar(), c in scalar(), d in scalar()) {
        prop_assume!(!a.is_zero());
        let form = Matrix::from_rows(vec![vec![q(0), a.clone()], vec![a, b]]).unwrap();
        let n = Matrix::from_rows(vec![vec![c.clone(), d], vec![q(0), c]]).unwrap();
        let dual = Bimodule::regular(&a2()).dual().unwrap();
        let r = form.invert().unwrap();
        let omega = form.mul(&n);
        let (os, _) = on_from_mc(&dual, &r, &omega).unwrap();
        prop_assert_eq!(mc_from_on(&os).unwrap().0, omega);
    }

    #[test]
    fn dgla_axioms(seed in any::<u64>(), (r, _) in a3h_mc()) {
        let tw = twilled_from_o_operator(&Bimodule::regular(&a3h()), &r).unwrap();
        let mut s = RationalSampler::new(seed, 5);
        let f1 = Cochain::random(3, 3, 1, &mut s, 60);
        let f2 = Cochain::random(3, 3, 1, &mut s, 60);
        let g2 = Cochain::random(3, 3, 2, &mut s, 40);
        for f in [&f1, &g2] {
            prop_assert!(d_mu1(&tw, &d_mu1(&tw, f).unwrap()).unwrap().is_zero());
        }
        let a = bracket_mu2(&tw, &f1, &g2).unwrap();
        let b = bracket_mu2(&tw, &g2, &f1).unwrap();
        prop_assert_eq!(a, b.scale(&Scalar::from_int(-1)));
        let lhs = d_mu1(&tw, &bracket_mu2(&tw, &f1, &f2).unwrap()).unwrap();
        let rhs = bracket_mu2(&tw, &d_mu1(&tw, &f1).unwrap(), &f2).unwrap()
            .add(&bracket_mu2(&tw, &f1, &d_mu1(&tw, &f2).unwrap()).unwrap().scale(&Scalar::sign(1))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

// structures

fn a2_form() -> impl Strategy<Value = Matrix> {
    (scalar(), scalar()).prop_filter_map("degenerate", |(a, b)| {
        (!a.is_zero()).then(|| Matrix::from_rows(vec![vec![q(0), a.clone()], vec![a, b]]).unwrap())
    })
}

fn a2_n() -> impl Strategy<Value = Matrix> {
    let list = a2_nijenhuis();
    prop_oneof![
        (scalar(), scalar()).prop_map(|(c, d)| Matrix::from_rows(vec![vec![c.clone(), d], vec![q(0), c]]).unwrap()),
        (0..list.len()).prop_map(move |k| list[k].clone()),
    ]
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn s_matrix_iff_o_operator(g in corpus_algebra(), r in symmetric(3, small_int()), form in a2_form(), pick in any::<bool>()) {
        let (g, r) = if pick { (a2(), form.invert().unwrap()) } else {
            let n = g.dim();
            (g, Matrix::from_fn(n, n, |i, j| r.row(i)[j].clone()))
        };
        let dual = Bimodule::regular(&g).dual().unwrap();
        prop_assert_eq!(
            check_s_matrix(&g, &SymTensor2::new(r.clone()).unwrap()).unwrap().holds,
            check_o_operator(&dual, &r).unwrap().holds
        );
    }

    #[test]
    fn kvn_iff_on_and_hn_iff_kvn(form in a2_form(), n in a2_n()) {
        let g = a2();
        let r = form.invert().unwrap();
        let rt = SymTensor2::new(r.clone()).unwrap();
        let kvn = soft(check_kvn(&g, &rt, &n));
        let dual = Bimodule::regular(&g).dual().unwrap();
        let on = soft(check_on_structure(&OnStructure::new(dual, r, n.clone(), n.transpose()).unwrap()));
        prop_assert_eq!(kvn, on);
        prop_assert_eq!(soft(check_hn(&g, &SymForm2::new(form).unwrap(), &n)), kvn);
        if kvn {
            let h = r_hierarchy(&g, &rt, &n, 3).unwrap();
            prop_assert!(h.tensors.iter().all(|t| t.is_symmetric()));
            prop_assert!(h.report.holds);
        }
    }

    #[test]
    fn kvb_iff_strong_mc(v in proptest::collection::vec(scalar(), 6), noise in symmetric(3, small_int()), noisy in any::<bool>()) {
        let g = a3a();
        let z = Scalar::zero;
        let r = Matrix::from_rows(vec![
            vec![v[3].clone(), z(), z()], vec![z(), v[4].clone(), v[5].clone()], vec![z(), v[5].clone(), z()],
        ]).unwrap();
        let mut b = Matrix::from_rows(vec![
            vec![v[0].clone(), z(), z()], vec![z(), z(), v[1].clone()], vec![z(), v[1].clone(), v[2].clone()],
        ]).unwrap();
        if noisy {
            b = b.add(&noise);
        }
        let kvb = soft(check_kvb(&g, &SymTensor2::new(r.clone()).unwrap(), &SymForm2::new(b.clone()).unwrap()));
        let tw = twilled_from_o_operator(&Bimodule::regular(&g).dual().unwrap(), &r).unwrap();
        prop_assert_eq!(kvb, check_strong_mc(&tw, &b).unwrap().holds);
    }
}

// search

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn enumeration_is_deterministic_and_closed(g in corpus_algebra().prop_filter("dim 2", |g| g.dim() == 2), kind in 0usize..3) {
        let cfg = SearchConfig::default();
        let dual = Bimodule::regular(&g).dual().unwrap();
        let target = match kind {
            0 => Target::Nijenhuis(&g),
            1 => Target::RotaBaxter(&g),
            _ => Target::OOperator(&dual),
        };
        let first = enumerate_operators(&target, &cfg).unwrap();
        prop_assert_eq!(&first, &enumerate_operators(&target, &cfg).unwrap());
        for m in &first {
            let ok = match kind {
                0 => check_nijenhuis(&g, m).unwrap().holds,
                1 => check_rota_baxter(&g, m).unwrap().holds,
                _ => check_o_operator(&dual, m).unwrap().holds,
            };
            prop_assert!(ok);
        }
    }

    #[test]
    fn cocycle_basis_is_independent((r, _) in a3h_mc()) {
        let tw = twilled_from_o_operator(&Bimodule::regular(&a3h()), &r).unwrap();
        let basis = solve_cocycle_space(&tw);
        if !basis.is_empty() {
            let stacked = Matrix::from_rows(basis.iter().map(|b| b.entries().to_vec()).collect()).unwrap();
            prop_assert_eq!(stacked.rank(), basis.len());
        }
    }
}

// scenarios

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn scenario_round_trip(k in 0usize..32, a in 1i64..9, b in -9i64..9) {
        let (_, src) = corpus_entries()[k % corpus_entries().len()];
        let mut sc = Scenario::from_json(src).unwrap();
        for (i, v) in sc.instantiation.values_mut().enumerate() {
            *v = if i % 2 == 0 { Scalar::from_int(a) } else { Scalar::from_int(b) };
        }
        let once = sc.to_json();
        let twice = Scenario::from_json(&once).unwrap().to_json();
        prop_assert_eq!(once, twice);
    }
}

#[test]
fn machine_report_is_byte_identical() {
    let a = serde_json::to_string(&run_corpus(Some("a2-hn-kvn"), Some(8)).unwrap()).unwrap();
    let b = serde_json::to_string(&run_corpus(Some("a2-hn-kvn"), Some(8)).unwrap()).unwrap();
    assert_eq!(a, b);
}
