//! Plain-text tables summarizing the seeded suites. Output depends only on the seed and `max_n`.

use std::fmt::Write;

use tropline_core::chroma::determines_monochromatic_line;
use tropline_core::newton::{
    build_subdivision, enumerate_semiuniform, face_census, optimal_subdivision, parallelogram_lower_bound,
};
use tropline_core::realization::{is_exact_metric, is_realizable, measure, reconstruct, Realizability};
use tropline_core::sg::determines_ordinary_line;
use tropline_core::universality::{compile, LinearSystemSpec};
use tropline_core::Result;

use crate::generate;

/// Small systems exercising equalities, strict inequalities and their degenerate cases.
pub fn sample_systems() -> Vec<(&'static str, LinearSystemSpec)> {
    let sys = |m: usize, eq: &[&[i64]], st: &[&[i64]]| LinearSystemSpec {
        m,
        equalities: eq.iter().map(|r| r.to_vec()).collect(),
        strict: st.iter().map(|r| r.to_vec()).collect(),
    };
    vec![
        ("orthant", sys(2, &[], &[])),
        ("v0=v1", sys(2, &[&[1, -1]], &[])),
        ("v0>v1", sys(2, &[], &[&[1, -1]])),
        ("complete", sys(3, &[], &[&[1, -1, -1], &[1, 0, -2]])),
        ("v0=v1+v2", sys(3, &[&[1, -1, -1]], &[])),
        ("v0=2v1", sys(2, &[&[1, -2]], &[])),
        ("v0+v1>v2", sys(3, &[], &[&[1, 1, -1]])),
        ("v0=v1,v1>v2", sys(3, &[&[1, -1, 0]], &[&[0, 1, -1]])),
        ("v0>0", sys(1, &[], &[&[1]])),
        ("zero row", sys(2, &[&[0, 0]], &[&[2, -1]])),
        ("empty", sys(2, &[&[1, 1]], &[])),
        ("v0=v1=v2", sys(3, &[&[1, -1, 0], &[0, 1, -1]], &[])),
    ]
}

/// Per `n`: the optimal tiling's census against the bound, and its realizability.
pub fn bounds_table(max_n: u32) -> Result<String> {
    let mut out = String::from("n  p  bound  h  realizable\n");
    for n in 1..=max_n {
        let sub = optimal_subdivision(n)?;
        let c = face_census(&sub)?;
        let real = match is_realizable(&sub)? {
            Realizability::Witness(_) => "yes",
            Realizability::Infeasible(_) => "no",
        };
        let _ = writeln!(
            out,
            "{n:<2} {:<2} {:<6} {:<2} {real}",
            c.parallelograms,
            parallelogram_lower_bound(n),
            c.hexagons
        );
    }
    Ok(out)
}

/// Per `n <= max_n`: number of semiuniform tilings, least parallelogram count, count without parallelograms.
pub fn enumeration_table(max_n: u32) -> Result<String> {
    let mut out = String::from("n  tilings  min_p  p=0\n");
    for n in 1..=max_n {
        let all = enumerate_semiuniform(n)?;
        let ps: Vec<usize> = all
            .iter()
            .map(|s| face_census(s).map(|c| c.parallelograms))
            .collect::<Result<_>>()?;
        let min = ps.iter().min().copied().unwrap_or(0);
        let zero = ps.iter().filter(|p| **p == 0).count();
        let _ = writeln!(out, "{n:<2} {:<8} {min:<6} {zero}", all.len());
    }
    Ok(out)
}

/// Outcome counts of the seeded random suites.
pub fn suites_table(seed: u64) -> Result<String> {
    let mut rng = generate::rng(seed);
    let mut ordinary = 0;
    for i in 0..1000 {
        let n = 4 + i % 9;
        let cfg = generate::point_config(&mut rng, n, i % 2 == 0);
        let l = determines_ordinary_line(&cfg)?;
        ordinary += usize::from(cfg.incident(&l).len() == 2);
    }
    let mut mono = 0;
    for i in 0..500 {
        let cfg = generate::coloured_config(&mut rng, 4 + i % 7);
        let l = determines_monochromatic_line(&cfg)?;
        let on = cfg.incident(&l);
        mono += usize::from(on.len() >= 2 && on.iter().all(|&j| cfg.colour_of(j) == l.colour));
    }
    let mut round = 0;
    for i in 0..200 {
        let arr = generate::arrangement(&mut rng, 1 + i % 8);
        let (sub, d) = measure(&arr)?;
        let back = reconstruct(&sub, &d)?;
        let p = face_census(&sub)?.parallelograms;
        round += usize::from(build_subdivision(&back)? == sub && arr.ordinary_points().len() == p);
    }
    let mut out = String::from("suite           cases  passed\n");
    let _ = writeln!(out, "ordinary        1000   {ordinary}");
    let _ = writeln!(out, "monochromatic   500    {mono}");
    let _ = writeln!(out, "round trip      200    {round}");
    Ok(out)
}

/// Size of each compiled sample system and whether a sampled metric maps into `V`.
pub fn universality_table(seed: u64) -> Result<String> {
    let mut rng = generate::rng(seed);
    let mut out = String::from("system          m  n    faces  edges  sample_in_V\n");
    for (name, sys) in sample_systems() {
        let c = compile(&sys)?;
        let sub = c.subdivision();
        let ok = match generate::sample_metrics(&mut rng, sub, 1)? {
            Some(ds) => {
                let d = &ds[0];
                if is_exact_metric(sub, d)? && sys.contains(&c.to_v(d)?) {
                    "yes"
                } else {
                    "NO"
                }
            }
            None => "empty",
        };
        let _ = writeln!(
            out,
            "{name:<15} {:<2} {:<4} {:<6} {:<6} {ok}",
            sys.m,
            sub.n(),
            sub.faces().len(),
            sub.interior_edges().len()
        );
    }
    Ok(out)
}

pub fn all_tables(seed: u64, max_n: u32) -> Result<String> {
    let mut out = String::new();
    out.push_str("# optimal tilings\n");
    out.push_str(&bounds_table(max_n)?);
    out.push_str("\n# semiuniform tilings\n");
    out.push_str(&enumeration_table(max_n.min(4))?);
    out.push_str("\n# seeded suites\n");
    out.push_str(&suites_table(seed)?);
    out.push_str("\n# universality\n");
    out.push_str(&universality_table(seed)?);
    Ok(out)
}
