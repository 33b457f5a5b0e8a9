use num_bigint::BigInt;
use persdgm::category::{AbGroup, CategoryId, Indecomposable, IsoClass, Mor, Obj};
use persdgm::diagram::{
    cumulate, diagram_leq, mobius_invert, positivity_check, project, type_a_diagram,
    type_b_diagram, DiagramGrid, Interval, Role,
};
use persdgm::exact::{Field, IntMatrix, Matrix, Rational};
use persdgm::grothendieck::{BasisKey, GroupElem, GroupTag};
use persdgm::homology::component_module;
use persdgm::homology::parse_filtration;
use persdgm::metrics::{erode, erosion_distance, erosion_exists};
use persdgm::module::{
    check_interleaving, common_refinement, ConstructibleModule, InterleavingPair,
};
use persdgm::Error;

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn qq(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn a(part: Indecomposable) -> BasisKey {
    BasisKey::A(part)
}

fn cyc(p: i64, m: u32) -> Indecomposable {
    Indecomposable::Cyclic {
        prime: p.into(),
        exponent: m,
    }
}

/// `k` on `[s, t)` over `field`.
fn interval_module(field: &Field, s: i64, t: i64) -> ConstructibleModule {
    let line = Obj::vect(field, 1);
    let zero = Obj::vect(field, 0);
    ConstructibleModule::from_steps(
        CategoryId::Vect(field.clone()),
        vec![
            (q(s), line.clone(), Mor::from_identity(&line)),
            (q(t), zero.clone(), Mor::zero(&line, &zero).unwrap()),
        ],
    )
    .unwrap()
}

/// `e → Z → Z/4 → Z/2` at `1, 2, 3`, all maps quotients.
fn torsion_chain() -> ConstructibleModule {
    let z = Obj::ab(AbGroup::free(1));
    let z4 = Obj::ab(AbGroup::cyclic(4));
    let z2 = Obj::ab(AbGroup::cyclic(2));
    let one = IntMatrix::from_i64_rows(&[&[1]]);
    ConstructibleModule::from_steps(
        CategoryId::Ab,
        vec![
            (q(1), z.clone(), Mor::from_identity(&z)),
            (
                q(2),
                z4.clone(),
                Mor::integer(z.clone(), z4.clone(), one.clone()).unwrap(),
            ),
            (q(3), z2.clone(), Mor::integer(z4, z2, one).unwrap()),
        ],
    )
    .unwrap()
}

#[test]
fn evaluation_within_and_across_segments() {
    let f = interval_module(&Field::Rationals, 0, 1);
    let p = qq(1, 4);
    assert_eq!(f.evaluate(&p, &p).unwrap(), Mor::identity(f.at(&p)));
    assert_eq!(
        f.evaluate(&q(0), &qq(1, 2)).unwrap(),
        Mor::identity(f.at(&q(0)))
    );
    let before = f.evaluate(&q(-3), &qq(1, 2)).unwrap();
    assert!(before.source().is_identity_object());
    assert!(f.evaluate(&q(1), &q(0)).is_err());
}

#[test]
fn dx_of_interval_module() {
    let f = interval_module(&Field::Rationals, 0, 1);
    let line = IsoClass::from_parts(f.category().clone(), [Indecomposable::Line]);
    assert_eq!(f.dx_iso(&q(0), Some(&q(1))).unwrap(), line);
    assert!(f.dx_iso(&q(0), None).unwrap().is_empty());
    assert!(matches!(
        f.dx_iso(&q(1), Some(&q(0))),
        Err(Error::MalformedInterval(_))
    ));
    assert!(matches!(
        f.dx_iso(&q(5), None),
        Err(Error::MalformedInterval(_))
    ));
}

#[test]
fn dx_of_torsion_chain() {
    let f = torsion_chain();
    let class = |parts: Vec<Indecomposable>| IsoClass::from_parts(CategoryId::Ab, parts);
    assert_eq!(
        f.dx_iso(&q(1), Some(&q(3))).unwrap(),
        class(vec![cyc(2, 2)])
    );
    assert_eq!(f.dx_iso(&q(1), None).unwrap(), class(vec![cyc(2, 1)]));
    let xb = f.dx_b().unwrap();
    assert_eq!(xb.get(1, 2), GroupElem::from_pairs([(BasisKey::Rank, 1)]));
    assert!(xb.get(1, 3).is_zero());
}

#[test]
fn finset_merge_tree() {
    let k = parse_filtration("0 : 0\n1 : 1\n0 1 : 2").unwrap();
    let f = component_module(&k).unwrap();
    let x = f.dx_a().unwrap();
    let pt = a(Indecomposable::Point);
    assert_eq!(x.get(2, 3).get(&pt), 2);
    assert_eq!(x.get(2, 4).get(&pt), 1);
    let y = type_a_diagram(&f).unwrap();
    let support: Vec<_> = y.support();
    assert_eq!(
        support,
        vec![
            (
                Interval::new(q(0), None).unwrap(),
                GroupElem::basis(pt.clone())
            ),
            (
                Interval::new(q(1), Some(q(2))).unwrap(),
                GroupElem::basis(pt)
            ),
        ]
    );
    assert!(matches!(type_b_diagram(&f), Err(Error::NoBGroup { .. })));
}

#[test]
fn torsion_chain_diagrams() {
    let f = torsion_chain();
    let ya = type_a_diagram(&f).unwrap();
    let z = a(Indecomposable::Free);
    assert_eq!(
        ya.get(1, 2),
        GroupElem::from_pairs([(z, 1), (a(cyc(2, 2)), -1)])
    );
    assert_eq!(
        ya.get(1, 3),
        GroupElem::from_pairs([(a(cyc(2, 2)), 1), (a(cyc(2, 1)), -1)])
    );
    assert_eq!(ya.get(1, 4), GroupElem::basis(a(cyc(2, 1))));
    assert_eq!(ya.cells().count(), 3);
    assert_eq!(cumulate(&ya), f.dx_a().unwrap());

    let yb = type_b_diagram(&f).unwrap();
    assert_eq!(yb.support().len(), 1);
    assert_eq!(yb.get(1, 2), GroupElem::basis(BasisKey::Rank));
    assert_eq!(project(&ya).unwrap(), yb);
    let report = positivity_check(&f).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn single_interval_inverts_to_a_point() {
    let f = interval_module(&Field::prime(2).unwrap(), 3, 7);
    let y = type_b_diagram(&f).unwrap();
    assert_eq!(
        y.support(),
        vec![(
            Interval::new(q(3), Some(q(7))).unwrap(),
            GroupElem::basis(BasisKey::Dimension)
        )]
    );
    assert_eq!(type_a_diagram(&f).unwrap().support().len(), 1);
}

#[test]
fn zero_inversions() {
    let x = DiagramGrid::new(vec![q(0), q(1)], GroupTag::Free, Role::Cumulative).unwrap();
    assert!(mobius_invert(&x).is_empty());
    let zero = ConstructibleModule::zero(CategoryId::Ab);
    let report = positivity_check(&zero).unwrap();
    assert!(report.passed() && report.diagram.is_empty());
}

#[test]
fn cumulate_spreads_to_subintervals() {
    let mut y =
        DiagramGrid::new(vec![q(0), q(1), q(2), q(3)], GroupTag::Free, Role::Finite).unwrap();
    y.set(1, 4, GroupElem::from_axes(&[1])).unwrap();
    let x = cumulate(&y);
    for i in 1..=4 {
        for j in i + 1..=5 {
            let expected = if j <= 4 { 1 } else { 0 };
            assert_eq!(x.get(i, j), GroupElem::from_axes(&[expected]), "({i},{j})");
        }
    }
}

fn vect_diagram(cells: &[(i64, i64, i64)]) -> DiagramGrid {
    let tag = GroupTag::B(CategoryId::Vect(Field::Rationals));
    let support: Vec<_> = cells
        .iter()
        .map(|&(p, q_, m)| {
            (
                Interval::new(q(p), Some(q(q_))).unwrap(),
                GroupElem::from_pairs([(BasisKey::Dimension, m)]),
            )
        })
        .collect();
    DiagramGrid::from_support(tag, &support).unwrap()
}

#[test]
fn diagram_morphisms() {
    let y = vect_diagram(&[(0, 3, 1)]);
    assert!(diagram_leq(&y, &y).unwrap());
    assert!(!diagram_leq(&y, &vect_diagram(&[(0, 2, 1)])).unwrap());
    let other = DiagramGrid::new(vec![], GroupTag::Free, Role::Finite).unwrap();
    assert!(diagram_leq(&y, &other).is_err());
}

#[test]
fn erosion_examples() {
    let y = vect_diagram(&[(0, 2, 1)]);
    assert_eq!(erode(&y, &q(0)).unwrap(), y);
    assert!(erode(&y, &q(1)).unwrap().is_empty());
    let z = vect_diagram(&[(0, 3, 1)]);
    assert!(erosion_exists(&y, &z, &q(1)).unwrap());
    assert!(!erosion_exists(&y, &z, &qq(1, 2)).unwrap());
    let w = vect_diagram(&[(0, 1, 1)]);
    let empty = vect_diagram(&[]);
    assert!(erosion_exists(&w, &empty, &qq(1, 2)).unwrap());
    assert_eq!(erosion_distance(&y, &y).unwrap().distance, Some(q(0)));
    assert_eq!(erosion_distance(&y, &z).unwrap().distance, Some(q(1)));
}

#[test]
fn erosion_distance_between_torsion_diagrams() {
    let tag = GroupTag::A(CategoryId::Ab);
    let cell = |end: Option<i64>, p: i64| {
        DiagramGrid::from_support(
            tag.clone(),
            &[(
                Interval::new(q(0), end.map(q)).unwrap(),
                GroupElem::basis(a(cyc(p, 1))),
            )],
        )
        .unwrap()
    };
    let r = erosion_distance(&cell(Some(2), 2), &cell(Some(2), 3)).unwrap();
    assert_eq!(r.distance, Some(q(1)));
    let r = erosion_distance(&cell(None, 2), &cell(None, 3)).unwrap();
    assert_eq!(r.distance, None);
    assert!(r.flagged.is_empty());
}

/// Breakpoints at half-differences matter: against the empty diagram the
/// distance is half the length of the longest bar.
#[test]
fn erosion_half_difference_breakpoint() {
    let y = vect_diagram(&[(1, 5, 1)]);
    let tag = y.tag().clone();
    let empty = DiagramGrid::new(vec![q(0)], tag, Role::Finite).unwrap();
    assert_eq!(erosion_distance(&y, &empty).unwrap().distance, Some(q(2)));
}

#[test]
fn interleavings() {
    let f = interval_module(&Field::Rationals, 0, 1);
    let pair = InterleavingPair::from_fn(
        &f,
        &f,
        &q(0),
        |r| Ok(Mor::identity(f.at(r))),
        |r| Ok(Mor::identity(f.at(r))),
    )
    .unwrap();
    assert!(check_interleaving(&f, &f, &pair).unwrap());

    let g = interval_module(&Field::Rationals, 10, 11);
    let eps = qq(1, 5);
    let zero_pair = InterleavingPair::from_fn(
        &f,
        &g,
        &eps,
        |r| Mor::zero(f.at(r), g.at(&(r + &eps))),
        |r| Mor::zero(g.at(r), f.at(&(r + &eps))),
    )
    .unwrap();
    assert!(!check_interleaving(&f, &g, &zero_pair).unwrap());

    let broken = InterleavingPair {
        epsilon: eps.clone(),
        phi: vec![],
        psi: vec![],
    };
    assert!(matches!(
        check_interleaving(&f, &g, &broken),
        Err(Error::GridMisalignment(_))
    ));
}

#[test]
fn shift_and_refinement() {
    let f = interval_module(&Field::Rationals, 0, 1);
    assert_eq!(f.shift(&q(0)), f);
    let g = f.shift(&qq(1, 4));
    assert_eq!(g.critical(), &[qq(-1, 4), qq(3, 4)]);
    assert_eq!(g.shift(&qq(1, 3)), f.shift(&qq(7, 12)));
    let (h, pair) = InterleavingPair::shift_pair(&f, &qq(1, 4)).unwrap();
    assert!(check_interleaving(&f, &h, &pair).unwrap());

    let a1 = interval_module(&Field::Rationals, 1, 3);
    let a2 = interval_module(&Field::Rationals, 2, 3);
    let (r1, r2) = common_refinement(&a1, &a2).unwrap();
    assert_eq!(r1.critical(), r2.critical());
    assert_eq!(r1.critical(), &[q(1), q(2), q(3)]);
    for (p, s) in [(0, 1), (1, 2), (1, 3), (2, 5)] {
        assert_eq!(
            r1.evaluate(&q(p), &q(s)).unwrap(),
            a1.evaluate(&q(p), &q(s)).unwrap()
        );
    }
    let (s1, s2) = common_refinement(&a1, &a1).unwrap();
    assert_eq!(
        (s1.critical(), s2.critical()),
        (a1.critical(), a1.critical())
    );
}

#[test]
fn repn_module_diagram() {
    let f = Field::Rationals;
    let lambda = q(2);
    let jordan = |n: usize| persdgm::exact::jordan_matrix(&f, &[(lambda.clone(), n)]);
    let one = Obj::repn(&f, jordan(1)).unwrap();
    let two = Obj::repn(&f, jordan(2)).unwrap();
    let zero = Obj::identity_object(&CategoryId::RepN(f.clone()));
    // J_1 ↪ J_2 as the eigenvector, then J_2 → 0
    let inc = Mor::new(
        one.clone(),
        two.clone(),
        persdgm::category::Payload::Linear(Matrix::from_rows(vec![vec![q(1)], vec![q(0)]])),
    )
    .unwrap();
    let m = ConstructibleModule::from_steps(
        CategoryId::RepN(f.clone()),
        vec![
            (q(0), one.clone(), Mor::from_identity(&one)),
            (q(1), two.clone(), inc),
            (q(2), zero.clone(), Mor::zero(&two, &zero).unwrap()),
        ],
    )
    .unwrap();
    let report = positivity_check(&m).unwrap();
    assert!(report.passed(), "{report:?}");
    let ev = BasisKey::Eigenvalue(lambda);
    assert_eq!(
        report.diagram.get(1, 3),
        GroupElem::from_pairs([(ev.clone(), 1)])
    );
    assert_eq!(report.diagram.get(2, 3), GroupElem::from_pairs([(ev, 1)]));
}

#[test]
fn finab_module_positivity() {
    let z2 = Obj::finab(AbGroup::cyclic(2)).unwrap();
    let z4 = Obj::finab(AbGroup::cyclic(4)).unwrap();
    let z = Obj::identity_object(&CategoryId::FinAb);
    let two = IntMatrix::from_i64_rows(&[&[2]]);
    let m = ConstructibleModule::from_steps(
        CategoryId::FinAb,
        vec![
            (q(0), z2.clone(), Mor::from_identity(&z2)),
            (q(1), z4.clone(), Mor::integer(z2, z4.clone(), two).unwrap()),
            (q(2), z.clone(), Mor::zero(&z4, &z).unwrap()),
        ],
    )
    .unwrap();
    let report = positivity_check(&m).unwrap();
    assert!(report.passed(), "{report:?}");
    let p2 = BasisKey::Prime(BigInt::from(2));
    assert_eq!(
        report.diagram.get(1, 3),
        GroupElem::from_pairs([(p2.clone(), 1)])
    );
    assert_eq!(report.diagram.get(2, 3), GroupElem::from_pairs([(p2, 1)]));
}
