//! Subcommand dispatch. [`run`] is pure: it maps a job and the input text to output text, an
//! optional SVG document and an exit status, leaving file IO to the binary.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use tropline_core::chroma::{determines_monochromatic_line, lift_colours};
use tropline_core::newton::{build_subdivision, face_census, optimal_subdivision, parallelogram_lower_bound};
use tropline_core::rational::{self, Rational};
use tropline_core::realization::{exactness_system, is_realizable, reconstruct, Realizability};
use tropline_core::sg::determines_ordinary_line;
use tropline_core::solve::elim::{Echelon, SparseRow};
use tropline_core::universality::compile;
use tropline_core::{Colour, Edge, NewtonSubdivision};

use crate::error::{CliError, CliResult};
use crate::format::*;
use crate::{generate, repro, svg};

#[derive(Debug, Clone, Parser)]
#[command(name = "tropline", version, about = "Incidence geometry of tropical lines")]
pub struct JobConfig {
    /// Input file; standard input if omitted.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file; standard output if omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Also write an SVG drawing to this file.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest `n` tabulated by `repro`.
    #[arg(long, global = true, default_value_t = 12)]
    pub max_n: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Arrangement to its dual Newton subdivision.
    Subdivide,
    /// Profile and shape of every face.
    Classify,
    /// Face counts of a semiuniform subdivision.
    Census,
    /// A semiuniform tiling of the n-th dilated simplex with fewest parallelograms.
    Optimal { n: u32 },
    /// A tropical line through exactly two of the points.
    Ordinary,
    /// A tropical line through at least two points, all of one colour.
    Monochromatic,
    /// An exact metric on the subdivision, or a certificate that none exists.
    Realize {
        /// Include the arrangement reconstructed from the metric.
        #[arg(long)]
        arrangement: bool,
    },
    /// Arrangement from a subdivision and an exact metric.
    Reconstruct,
    /// Compile a linear system into a subdivision with isomorphic realization space.
    Universality,
    /// SVG drawing of an arrangement or subdivision.
    Render,
    /// Regenerate the summary tables.
    Repro,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub svg: Option<String>,
    pub code: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            svg: None,
            code: 0,
        }
    }
}

#[derive(Debug, Serialize)]
struct CensusOut {
    #[serde(flatten)]
    census: CensusJson,
    bound: u32,
}

#[derive(Debug, Serialize)]
struct ClassifyOut {
    n: u32,
    linear: bool,
    semiuniform: bool,
    faces: Vec<ClassifiedFaceJson>,
}

#[derive(Debug, Serialize)]
struct LineOut {
    line: LineJson,
    points: Vec<PointJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct RealizeOut {
    #[serde(default = "yes")]
    realizable: bool,
    subdivision: SubdivisionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metric: Option<MetricJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arrangement: Option<ArrangementJson>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Serialize)]
struct LiftOut {
    /// Columns spanning the equalities' kernel; `v = basis · t`.
    basis: Vec<Vec<String>>,
    /// Rows per interior edge; the metric is `matrix · t`.
    matrix: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
struct UniversalityOut {
    subdivision: SubdivisionJson,
    /// The edges whose lengths are the coordinates `v_0, ..., v_{m-1}`.
    coordinate_edges: Vec<[LatticeJson; 2]>,
    /// The interior edges, in the column order of `to_v`.
    interior_edges: Vec<[LatticeJson; 2]>,
    to_v: Vec<Vec<i64>>,
    from_v: Option<LiftOut>,
}

/// Anything with a subdivision: a subdivision file, an arrangement, or a realized subdivision.
enum Geometry {
    Arrangement(tropline_core::Arrangement),
    Subdivision(NewtonSubdivision, Option<std::collections::BTreeMap<Edge, Colour>>),
}

fn read_geometry(text: &str) -> CliResult<Geometry> {
    let v: serde_json::Value = parse(text, "input")?;
    if v.get("lines").is_some() {
        return Ok(Geometry::Arrangement(
            parse::<ArrangementJson>(text, "arrangement")?.to_arrangement()?,
        ));
    }
    let s = if v.get("subdivision").is_some() {
        parse::<RealizeOut>(text, "realized subdivision")?.subdivision
    } else {
        parse::<SubdivisionJson>(text, "subdivision")?
    };
    let colours = s.edge_colours()?;
    Ok(Geometry::Subdivision(s.to_subdivision()?, colours))
}

fn subdivision_of(g: Geometry) -> CliResult<NewtonSubdivision> {
    match g {
        Geometry::Arrangement(a) => Ok(build_subdivision(&a)?),
        Geometry::Subdivision(s, _) => Ok(s),
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational::to_string).collect()
}

pub fn run(job: &JobConfig, input: &str) -> CliResult<Outcome> {
    let want_svg = job.svg.is_some();
    match &job.command {
        Command::Subdivide => {
            let arr = parse::<ArrangementJson>(input, "arrangement")?.to_arrangement()?;
            let sub = build_subdivision(&arr)?;
            let colours = if arr.is_coloured() {
                Some(lift_colours(&arr)?.colours)
            } else {
                None
            };
            let mut out = SubdivisionJson::from_subdivision(&sub);
            if let Some(c) = &colours {
                out = out.with_colours(c);
            }
            let svg = want_svg.then(|| svg::render_subdivision(&sub, colours.as_ref()));
            Ok(Outcome {
                output: to_json(&out),
                svg,
                code: 0,
            })
        }
        Command::Classify => {
            let sub = subdivision_of(read_geometry(input)?)?;
            let faces = sub
                .faces()
                .iter()
                .map(|f| match f.profile() {
                    Ok(p) => ClassifiedFaceJson::new(f, p),
                    Err(_) => ClassifiedFaceJson::nonlinear(f),
                })
                .collect();
            let out = ClassifyOut {
                n: sub.n(),
                linear: sub.is_linear(),
                semiuniform: sub.is_semiuniform(),
                faces,
            };
            Ok(Outcome::ok(to_json(&out)))
        }
        Command::Census => {
            let sub = subdivision_of(read_geometry(input)?)?;
            let c = face_census(&sub)?;
            let out = CensusOut {
                census: CensusJson::new(sub.n(), c),
                bound: parallelogram_lower_bound(sub.n()),
            };
            Ok(Outcome::ok(to_json(&out)))
        }
        Command::Optimal { n } => {
            if *n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            let sub = optimal_subdivision(*n)?;
            let svg = want_svg.then(|| svg::render_subdivision(&sub, None));
            Ok(Outcome {
                output: to_json(&SubdivisionJson::from_subdivision(&sub)),
                svg,
                code: 0,
            })
        }
        Command::Ordinary | Command::Monochromatic => {
            let cfg = parse::<PointsJson>(input, "points")?.to_config()?;
            let line = if matches!(job.command, Command::Ordinary) {
                determines_ordinary_line(&cfg)?
            } else {
                determines_monochromatic_line(&cfg)?
            };
            let points = cfg
                .incident(&line)
                .iter()
                .map(|&i| point_to_json(&cfg.points()[i]))
                .collect();
            Ok(Outcome::ok(to_json(&LineOut {
                line: line_to_json(&line),
                points,
            })))
        }
        Command::Realize { arrangement } => {
            let sub = subdivision_of(read_geometry(input)?)?;
            let sj = SubdivisionJson::from_subdivision(&sub);
            let svg = want_svg.then(|| svg::render_subdivision(&sub, None));
            match is_realizable(&sub)? {
                Realizability::Witness(d) => {
                    let arr = if *arrangement {
                        Some(ArrangementJson::from_arrangement(&reconstruct(&sub, &d)?))
                    } else {
                        None
                    };
                    let out = RealizeOut {
                        realizable: true,
                        subdivision: sj,
                        metric: Some(MetricJson::from_metric(&d)),
                        certificate: None,
                        arrangement: arr,
                    };
                    Ok(Outcome {
                        output: to_json(&out),
                        svg,
                        code: 0,
                    })
                }
                Realizability::Infeasible(cert) => {
                    let sys = exactness_system(&sub)?;
                    let out = RealizeOut {
                        realizable: false,
                        subdivision: sj,
                        metric: None,
                        certificate: Some(CertificateJson::new(&cert, &sys.vertices)),
                        arrangement: None,
                    };
                    Ok(Outcome {
                        output: to_json(&out),
                        svg,
                        code: 2,
                    })
                }
            }
        }
        Command::Reconstruct => {
            let r: RealizeOut = parse(input, "realized subdivision")?;
            let sub = r.subdivision.to_subdivision()?;
            let d = r
                .metric
                .ok_or_else(|| CliError::Field {
                    field: "metric".into(),
                    message: "missing".into(),
                })?
                .to_metric()?;
            let arr = reconstruct(&sub, &d)?;
            let svg = want_svg.then(|| svg::render_arrangement(&arr));
            Ok(Outcome {
                output: to_json(&ArrangementJson::from_arrangement(&arr)),
                svg,
                code: 0,
            })
        }
        Command::Universality => {
            let sys = parse::<SystemJson>(input, "system")?.to_system()?;
            let c = compile(&sys)?;
            let sub = c.subdivision();
            let rs = exactness_system(sub)?;
            let from_v = lift_matrix(&c, &rs.edges, job.seed)?;
            let out = UniversalityOut {
                subdivision: SubdivisionJson::from_subdivision(sub),
                coordinate_edges: c.coordinate_edges().iter().map(edge_to_json).collect(),
                interior_edges: rs.edges.iter().map(edge_to_json).collect(),
                to_v: c.iso_matrix()?,
                from_v,
            };
            let svg = want_svg.then(|| svg::render_subdivision(sub, None));
            Ok(Outcome {
                output: to_json(&out),
                svg,
                code: 0,
            })
        }
        Command::Render => {
            let svg = match read_geometry(input)? {
                Geometry::Arrangement(a) => svg::render_arrangement(&a),
                Geometry::Subdivision(s, colours) => svg::render_subdivision(&s, colours.as_ref()),
            };
            Ok(Outcome::ok(svg))
        }
        Command::Repro => Ok(Outcome::ok(repro::all_tables(job.seed, job.max_n)?)),
    }
}

/// The inverse isomorphism as a matrix over a basis of the equalities' kernel, read off by finite
/// differences around a sampled point of `V`; `None` if `V` is empty.
fn lift_matrix(c: &tropline_core::universality::Compiled, edges: &[Edge], seed: u64) -> CliResult<Option<LiftOut>> {
    let sys = &c.encoded.system;
    let mut rng = generate::rng(seed);
    let Some(v0) = generate::sample_v(&mut rng, sys, 1).pop() else {
        return Ok(None);
    };
    let mut ech = Echelon::new(sys.m);
    for f in &sys.equalities {
        ech.push(
            f.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (i, rational::int(*c)))
                .collect::<SparseRow>(),
        );
    }
    let k = ech.kernel();
    let basis: Vec<Vec<Rational>> = (0..k.dim())
        .map(|j| {
            let mut t = vec![rational::zero(); k.dim()];
            t[j] = rational::one();
            k.eval(&t)
        })
        .collect();
    let lift = |v: &[Rational]| -> CliResult<Vec<Rational>> {
        let d = c
            .from_v(v)?
            .ok_or_else(|| CliError::Usage("sampled point failed to lift".into()))?;
        Ok(edges.iter().map(|e| d.lengths[e].clone()).collect())
    };
    let base = lift(&v0)?;
    let mut cols = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut eps = rational::one();
        let v = loop {
            let v: Vec<Rational> = v0.iter().zip(b).map(|(x, y)| x + y * &eps).collect();
            if sys.contains(&v) {
                break v;
            }
            eps /= rational::int(2);
        };
        cols.push(
            lift(&v)?
                .iter()
                .zip(&base)
                .map(|(x, y)| (x - y) / &eps)
                .collect::<Vec<_>>(),
        );
    }
    let matrix = (0..edges.len())
        .map(|i| cols.iter().map(|col| rational::to_string(&col[i])).collect())
        .collect();
    Ok(Some(LiftOut {
        basis: basis.iter().map(|b| strings(b)).collect(),
        matrix,
    }))
}
