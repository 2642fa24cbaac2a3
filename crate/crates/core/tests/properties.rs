use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::test_runner::Config;

use tropline_core::chroma::{is_plausibly_coloured, lift_colours, monochromatic_cells};
use tropline_core::geometry::{dual_line, dual_point, intersect, line_through, Intersection, LineThrough};
use tropline_core::newton::{build_subdivision, face_census, parallelogram_lower_bound};
use tropline_core::rational::{frac, int};
use tropline_core::realization::{exactness_system, is_exact_metric, measure, reconstruct, ExactMetric};
use tropline_core::sg::{determines_ordinary_line, PointConfig};
use tropline_core::solve::elim::{self, SparseRow};
use tropline_core::solve::fm::{canonical, Constraint, Relation};
use tropline_core::universality::{
    base_subdivision, encode_system, extend, lift_metric, restrict_metric, AdmissibleTuple, LinearSystemSpec,
};
use tropline_core::{Arrangement, Colour, Point, Rational, TropLine};

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..24, 1i64..5).prop_map(|(n, d)| frac(n, d))
}

fn point() -> impl Strategy<Value = Point> {
    (rational(), rational()).prop_map(|(x, y)| Point::new(x, y))
}

fn coaxial_free(max: usize) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(point(), 1..=max).prop_filter("distinct, no coaxial pair", |ps| {
        let set: BTreeSet<&Point> = ps.iter().collect();
        set.len() == ps.len()
            && !Arrangement::from_centers(ps.iter().cloned())
                .unwrap()
                .has_coaxial_centers()
    })
}

fn coloured(max: usize) -> impl Strategy<Value = Arrangement> {
    coaxial_free(max).prop_flat_map(|ps| {
        let n = ps.len();
        prop::collection::vec(any::<bool>(), n).prop_map(move |cs| {
            let lines = ps
                .iter()
                .zip(cs)
                .map(|(p, red)| TropLine::coloured(p.clone(), if red { Colour::Red } else { Colour::Blue }))
                .collect();
            Arrangement::new(lines).unwrap()
        })
    })
}

fn differences(arr: &Arrangement) -> Vec<Point> {
    let mut cs: Vec<Point> = arr.lines().iter().map(|l| l.center.clone()).collect();
    cs.sort();
    cs.iter().map(|c| c - &cs[0]).collect()
}

proptest! {
    #![proptest_config(Config::with_cases(64))]

    #[test]
    fn duality_is_an_involution(p in point()) {
        prop_assert_eq!(dual_line(&dual_point(&p)), p);
    }

    #[test]
    fn lines_through_two_points_contain_them(p in point(), q in point()) {
        prop_assume!(p != q);
        match line_through(&p, &q).unwrap() {
            LineThrough::Unique(l) => prop_assert!(l.contains(&p) && l.contains(&q)),
            LineThrough::Coaxial(fam) => {
                let l = fam.canonical();
                prop_assert!(l.contains(&p) && l.contains(&q));
            }
        }
    }

    #[test]
    fn intersection_points_lie_on_both_lines(p in point(), q in point()) {
        prop_assume!(p != q);
        let (a, b) = (TropLine::new(p), TropLine::new(q));
        let x = intersect(&a, &b).unwrap();
        prop_assert_eq!(&x, &intersect(&b, &a).unwrap());
        if let Intersection::Point(x) = x {
            prop_assert!(a.contains(&x) && b.contains(&x));
        }
    }

    #[test]
    fn faces_match_local_profiles(arr in coaxial_free(7).prop_map(|ps| Arrangement::from_centers(ps).unwrap())) {
        let (sub, _) = measure(&arr).unwrap();
        sub.validate().unwrap();
        prop_assert!(sub.is_linear());
        let origins = tropline_core::newton::build_subdivision_with_origins(&arr).unwrap().1;
        for (f, x) in sub.faces().iter().zip(&origins) {
            prop_assert_eq!(f.profile().unwrap(), arr.local_profile(x).unwrap());
        }
    }

    #[test]
    fn census_identities(arr in coaxial_free(8).prop_map(|ps| Arrangement::from_centers(ps).unwrap())) {
        let sub = build_subdivision(&arr).unwrap();
        prop_assert!(sub.is_semiuniform());
        let c = face_census(&sub).unwrap();
        let n = sub.n() as usize;
        prop_assert_eq!(c.triangles, n);
        prop_assert_eq!(6 * c.hexagons + 2 * c.parallelograms + n, n * n);
        prop_assert_eq!(c.parallelograms % 3, ((n * n - n) / 2) % 3);
        prop_assert!(c.parallelograms as u32 >= parallelogram_lower_bound(n as u32));
        prop_assert_eq!(arr.ordinary_points().len(), c.parallelograms);
    }

    #[test]
    fn measure_reconstruct_round_trip(arr in coaxial_free(7).prop_map(|ps| Arrangement::from_centers(ps).unwrap())) {
        let (sub, d) = measure(&arr).unwrap();
        prop_assert!(is_exact_metric(&sub, &d).unwrap());
        let back = reconstruct(&sub, &d).unwrap();
        prop_assert_eq!(build_subdivision(&back).unwrap(), sub);
        prop_assert_eq!(differences(&back), differences(&arr));
    }

    #[test]
    fn ordinary_lines_have_two_points(ps in prop::collection::vec(point(), 4..9)) {
        let set: BTreeSet<&Point> = ps.iter().collect();
        prop_assume!(set.len() == ps.len());
        let cfg = PointConfig::new(ps).unwrap();
        let l = determines_ordinary_line(&cfg).unwrap();
        prop_assert_eq!(cfg.incident(&l).len(), 2);
    }

    #[test]
    fn lifted_colourings_are_plausible(arr in coloured(7)) {
        let cs = lift_colours(&arr).unwrap();
        prop_assert!(is_plausibly_coloured(&cs));
        let swapped = lift_colours(&arr.swap_colours()).unwrap();
        prop_assert_eq!(&swapped, &cs.swap_colours());
        prop_assert_eq!(monochromatic_cells(&swapped), monochromatic_cells(&cs));
        prop_assert_eq!(monochromatic_cells(&cs).len(), arr.monochromatic_points().unwrap().len());
    }

    #[test]
    fn canonical_form_ignores_presentation(
        rows in prop::collection::vec((prop::collection::vec(-3i64..4, 3), 0usize..3, -2i64..3), 1..6),
        scale in 1i64..5,
        rot in 0usize..6,
    ) {
        let rel = |k: usize| [Relation::Eq, Relation::Ge, Relation::Gt][k];
        let cons: Vec<Constraint> = rows
            .iter()
            .map(|(c, k, r)| Constraint::new(c.iter().map(|&v| int(v)).collect(), rel(*k), int(*r)))
            .collect();
        let mut other: Vec<Constraint> = cons
            .iter()
            .map(|c| Constraint::new(c.coeffs.iter().map(|v| v * int(scale)).collect(), c.rel, &c.rhs * int(scale)))
            .collect();
        let k = rot % other.len();
        other.rotate_left(k);
        other.push(cons[0].clone());
        prop_assert_eq!(canonical(cons, 3), canonical(other, 3));
    }
}

fn tuple(m: usize) -> impl Strategy<Value = AdmissibleTuple> {
    (0..m, 0..m, 0..m, 0..m).prop_filter_map("admissible", move |(ap, bp, a, b)| {
        AdmissibleTuple::new(ap, bp + 1, a, b + 1, m).ok()
    })
}

fn lift_case() -> impl Strategy<Value = (usize, AdmissibleTuple, Vec<i64>)> {
    (3usize..8).prop_flat_map(|m| (Just(m), tuple(m), prop::collection::vec(1i64..4, m)))
}

/// The exact metric on the extension agreeing with `d` on the old edges, by a generic solve.
fn solve_extension(
    sub: &tropline_core::NewtonSubdivision,
    fixed: &BTreeMap<tropline_core::Edge, Rational>,
) -> Option<Vec<Rational>> {
    let sys = exactness_system(sub).unwrap();
    let idx = sys.edge_index();
    let unknown: Vec<usize> = (0..sys.variables())
        .filter(|j| !fixed.contains_key(&sys.edges[*j]))
        .collect();
    let pos: BTreeMap<usize, usize> = unknown.iter().enumerate().map(|(i, j)| (*j, i)).collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for r in &sys.rows {
        let mut row = SparseRow::new();
        let mut b = Rational::from_integer(0.into());
        for (j, a) in r {
            match pos.get(j) {
                Some(&i) => {
                    row.insert(i, a.clone());
                }
                None => b -= a * &fixed[&sys.edges[*j]],
            }
        }
        rows.push(row);
        rhs.push(b);
    }
    let mut ech = elim::Echelon::new(unknown.len());
    for r in &rows {
        ech.push(r.clone());
    }
    assert_eq!(
        ech.rank(),
        unknown.len(),
        "extension is not determined by the old metric"
    );
    let x = elim::solve(unknown.len(), &rows, &rhs)?;
    let mut full = vec![Rational::from_integer(0.into()); sys.variables()];
    for (e, v) in fixed {
        full[idx[e]] = v.clone();
    }
    for (i, j) in unknown.iter().enumerate() {
        full[*j] = x[i].clone();
    }
    Some(full)
}

proptest! {
    #![proptest_config(Config::with_cases(48))]

    #[test]
    fn extension_lifts_exactly_when_the_interval_sums_agree((m, t, pi) in lift_case()) {
        let base = base_subdivision(m).unwrap();
        let (next, ext) = extend(&base, t).unwrap();
        next.base.validate().unwrap();
        prop_assert!(next.base.is_linear());
        let pi: Vec<Rational> = pi.iter().map(|&v| int(v)).collect();
        let d = ExactMetric { lengths: base.marked.iter().copied().zip(pi.iter().cloned()).collect() };
        let holds = t.holds(&pi);
        let lifted = lift_metric(&ext, &next, &d).unwrap();
        prop_assert_eq!(lifted.is_some(), holds);
        let fixed: BTreeMap<_, _> = d
            .lengths
            .iter()
            .map(|(e, v)| (tropline_core::Edge::new(e.a + ext.shift, e.b + ext.shift), v.clone()))
            .collect();
        let oracle = solve_extension(&next.base, &fixed);
        match lifted {
            Some(l) => {
                prop_assert_eq!(restrict_metric(&ext, &l).unwrap(), d);
                prop_assert_eq!(next.pi(&l).unwrap(), pi);
                let sys = exactness_system(&next.base).unwrap();
                prop_assert_eq!(Some(sys.vector(&l).unwrap()), oracle);
            }
            None => prop_assert!(oracle.is_none_or(|x| x.iter().any(|v| *v <= int(0)))),
        }
    }

    #[test]
    fn encoded_points_lie_in_the_intervallic_set(
        f in prop::collection::vec(-2i64..3, 3),
        g in prop::collection::vec(-2i64..3, 3),
        v in prop::collection::vec(1i64..7, 3),
    ) {
        let sys = LinearSystemSpec { m: 3, equalities: vec![], strict: vec![f, g] };
        let enc = encode_system(&sys).unwrap();
        let v: Vec<Rational> = v.iter().map(|&x| int(x)).collect();
        let w = enc.lift(&v);
        prop_assert_eq!(&w[..3], &v[..]);
        prop_assert_eq!(enc.spec.contains(&w), sys.contains(&v));
        prop_assert_eq!(enc.spec.m, enc.functions.coordinate_functions.len());
    }
}
