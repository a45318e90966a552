mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{blowup_pn, builtin_fans, double_blowup_pn, kleinschmidt_parameters, random_face};
use toric_a1::cox::{arrangement, SubspaceArrangement};
use toric_a1::fan::{hirzebruch, kleinschmidt, projective_space, star_subdivision};
use toric_a1::homotopy::{analyze, cox_cover_homotopy, kleinschmidt_case, HomotopyError};
use toric_a1::{Fan, GroupExpr, RaySet};

fn g(s: &str) -> GroupExpr {
    s.parse().unwrap()
}

fn torus_rank(pi1: &GroupExpr) -> u32 {
    match pi1 {
        GroupExpr::TorusPower(k) => *k,
        GroupExpr::Extension { quotient, .. } => torus_rank(quotient),
        GroupExpr::Partial(t) => torus_rank(t),
        other => panic!("unexpected pi1 {other}"),
    }
}

#[test]
fn kleinschmidt_closed_form_agrees() {
    for (d, a) in kleinschmidt_parameters(5, 3) {
        let r = a.len();
        let s = d - r + 1;
        let report = analyze(&kleinschmidt(d, &a).unwrap()).unwrap();
        assert_eq!(report.pi1, kleinschmidt_case(r, s), "d={d} a={a:?}");
    }
}

#[test]
fn closed_form_examples() {
    assert_eq!(kleinschmidt_case(2, 3), g("Gm^2"));
    assert_eq!(kleinschmidt_case(1, 3), g("ext(KMW(2) -> . -> Gm^2)"));
    assert_eq!(kleinschmidt_case(1, 2), g("ext(KMW(2)^2 -> . -> Gm^2)"));
}

#[test]
fn worked_examples() {
    let p3 = analyze(&projective_space(3).unwrap()).unwrap();
    assert_eq!(p3.pi1, g("Gm"));
    assert_eq!(p3.vanishing, Some([2, 2]));
    assert_eq!(p3.group_in_degree(3), Some(g("KMW(4)")));
    assert_eq!(
        analyze(&hirzebruch(4).unwrap()).unwrap().pi1,
        g("ext(KMW(2)^2 -> . -> Gm^2)")
    );
    assert_eq!(analyze(&blowup_pn(4)).unwrap().pi1, g("ext(KMW(2) -> . -> Gm^2)"));
    assert_eq!(analyze(&double_blowup_pn(3)).unwrap().pi1, g("surj-onto(Gm^3)"));
}

#[test]
fn cover_examples() {
    let s = |x: &[usize]| RaySet::from_indices(x.iter().copied());
    let pn = cox_cover_homotopy(&SubspaceArrangement::new(4, vec![s(&[0, 1, 2, 3])]));
    assert_eq!((pn.d, pn.vanish_below, pn.first.clone()), (Some(4), 2, g("KMW(4)")));
    let two = cox_cover_homotopy(&SubspaceArrangement::new(4, vec![s(&[0, 1]), s(&[2, 3])]));
    assert_eq!(two.first, g("KMW(2)^2"));
    let three = cox_cover_homotopy(&SubspaceArrangement::new(4, vec![s(&[0, 1]), s(&[1, 2]), s(&[2, 3])]));
    assert_eq!(three.first, g("surj-onto(KMW(2)^3)"));
    let empty = cox_cover_homotopy(&SubspaceArrangement::new(3, vec![]));
    assert!(empty.connected && empty.first.is_trivial() && empty.d.is_none());
}

#[test]
fn blowups_raise_torus_rank_and_force_size_two_nonfaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for fan in builtin_fans().into_iter().filter(|f| f.dim() >= 2) {
        let before = torus_rank(&analyze(&fan).unwrap().pi1);
        let mut faces: Vec<RaySet> = fan.max_cones().iter().map(|c| c.0).collect();
        faces.push(random_face(&fan, &mut rng));
        for sigma in faces {
            // A ray outside the star of sigma is needed for a size-2 non-face.
            let star_rays = fan.star(sigma).iter().fold(RaySet::EMPTY, |acc, c| acc.union(c.0));
            let out = star_subdivision(&fan, sigma).unwrap();
            let report = analyze(&out).unwrap();
            assert_eq!(torus_rank(&report.pi1), before + 1);
            if star_rays != fan.all_rays() {
                assert_eq!(arrangement(&out).codim(), Some(2), "{:?}", out.provenance());
            }
        }
    }
}

#[test]
fn higher_groups_transfer_from_the_cover() {
    for fan in builtin_fans() {
        let report = analyze(&fan).unwrap();
        let cover = cox_cover_homotopy(&arrangement(&fan));
        let d = cover.d.unwrap();
        for i in 2..=d.saturating_sub(2) {
            assert_eq!(report.group_in_degree(i), Some(GroupExpr::Trivial));
        }
        if d >= 3 {
            assert_eq!(report.group_in_degree(d - 1), Some(cover.first.clone()));
        }
    }
}

#[test]
fn every_extension_carries_the_caveat() {
    for fan in builtin_fans() {
        let report = analyze(&fan).unwrap();
        let has_note = report.notes.iter().any(|n| n.starts_with("[extension]"));
        assert_eq!(report.pi1.contains_extension(), has_note);
        assert!(report.notes.iter().any(|n| n.starts_with("[weight]")));
    }
}

#[test]
fn incomplete_fans_are_refused() {
    let quadrant = Fan::new(2, vec![common::v(&[1, 0]), common::v(&[0, 1])], vec![vec![0, 1]], None).unwrap();
    assert!(matches!(analyze(&quadrant), Err(HomotopyError::NotSmoothProper(_))));
}

#[test]
fn report_json_round_trip() {
    for fan in builtin_fans().into_iter().take(12) {
        let report = analyze(&fan).unwrap();
        let back: toric_a1::HomotopyReport = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(back, report);
        assert_eq!(analyze(&fan).unwrap().to_json(), report.to_json());
    }
}

fn leaf() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        Just(GroupExpr::Trivial),
        (0u32..4).prop_map(GroupExpr::TorusPower),
        (1u32..5, 0u32..4).prop_map(|(weight, mult)| GroupExpr::MWPower { weight, mult }),
    ]
}

fn tree() -> impl Strategy<Value = GroupExpr> {
    leaf().prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(GroupExpr::DirectSum),
            (inner.clone(), inner.clone()).prop_map(|(k, q)| GroupExpr::Extension {
                kernel: Box::new(k),
                quotient: Box::new(q),
            }),
            inner.prop_map(|t| GroupExpr::Partial(Box::new(t))),
        ]
    })
}

proptest! {
    #[test]
    fn normalization_is_idempotent(e in tree()) {
        let once = e.normalized();
        prop_assert_eq!(once.normalized(), once.clone());
        prop_assert_eq!(&e, &once);
    }

    #[test]
    fn render_parse_round_trip(e in tree()) {
        let text = e.to_string();
        let back: GroupExpr = text.parse().unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn trivial_kernel_collapses(q in tree()) {
        let ext = GroupExpr::Extension { kernel: Box::new(GroupExpr::Trivial), quotient: Box::new(q.clone()) };
        prop_assert_eq!(ext, q);
    }
}

#[test]
fn parse_errors() {
    for bad in ["", "Gm^", "KMW(0", "ext(Gm -> Gm)", "sum(Gm", "Gm Gm", "foo"] {
        assert!(bad.parse::<GroupExpr>().is_err(), "{bad}");
    }
}
