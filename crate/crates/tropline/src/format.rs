//! JSON file formats. Rationals are written as strings such as `"-3/4"` so that no
//! precision is lost; lattice points are integer pairs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use tropline_core::newton::Census;
use tropline_core::rational::{self, Rational};
use tropline_core::realization::{Certificate, ExactMetric};
use tropline_core::sg::PointConfig;
use tropline_core::subdivision::{Edge, Face, NewtonSubdivision};
use tropline_core::universality::LinearSystemSpec;
use tropline_core::{Arrangement, Colour, LatticePoint, LocalProfile, Point, TropLine};

use crate::error::{CliError, CliResult};

pub type PointJson = [String; 2];
pub type LatticeJson = [i64; 2];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColourJson {
    Red,
    Blue,
}

impl From<Colour> for ColourJson {
    fn from(c: Colour) -> Self {
        match c {
            Colour::Red => ColourJson::Red,
            Colour::Blue => ColourJson::Blue,
        }
    }
}

impl From<&ColourJson> for Colour {
    fn from(c: &ColourJson) -> Self {
        match c {
            ColourJson::Red => Colour::Red,
            ColourJson::Blue => Colour::Blue,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineJson {
    pub center: PointJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colour: Option<ColourJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementJson {
    pub lines: Vec<LineJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsJson {
    pub points: Vec<PointJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colours: Option<Vec<ColourJson>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubdivisionJson {
    pub n: u32,
    #[serde(default)]
    pub vertices: Vec<LatticeJson>,
    #[serde(default)]
    pub edges: Vec<EdgeJson>,
    pub faces: Vec<FaceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub a: LatticeJson,
    pub b: LatticeJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colour: Option<ColourJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceJson {
    pub cycle: Vec<LatticeJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<[u32; 4]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LengthJson {
    pub a: LatticeJson,
    pub b: LatticeJson,
    pub length: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricJson {
    pub edges: Vec<LengthJson>,
}

/// A subdivision with an exact metric: the output of `realize` and the input of `reconstruct`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizedJson {
    pub subdivision: SubdivisionJson,
    pub metric: MetricJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    /// One pair of multipliers `(x, y)` per interior vertex.
    pub multipliers: Vec<VertexMultiplierJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMultiplierJson {
    pub vertex: LatticeJson,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    pub m: usize,
    #[serde(default)]
    pub equalities: Vec<Vec<i64>>,
    #[serde(default)]
    pub strict: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub n: u32,
    pub triangles: usize,
    pub parallelograms: usize,
    pub hexagons: usize,
    pub other: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedFaceJson {
    pub cycle: Vec<LatticeJson>,
    pub profile: Option<[u32; 4]>,
    pub shape: String,
}

/// Parses a JSON document, reporting line and column on failure.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        what: what.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn rat(s: &str, field: impl FnOnce() -> String) -> CliResult<Rational> {
    rational::parse(s).ok_or_else(|| CliError::Field {
        field: field(),
        message: format!("invalid rational {s:?}"),
    })
}

pub fn point_to_json(p: &Point) -> PointJson {
    [rational::to_string(&p.x), rational::to_string(&p.y)]
}

fn point_from_json(p: &PointJson, field: &str) -> CliResult<Point> {
    Ok(Point::new(
        rat(&p[0], || format!("{field}[0]"))?,
        rat(&p[1], || format!("{field}[1]"))?,
    ))
}

fn lattice(p: LatticePoint) -> LatticeJson {
    [p.x, p.y]
}

fn from_lattice(p: &LatticeJson) -> LatticePoint {
    LatticePoint::new(p[0], p[1])
}

pub fn line_to_json(l: &TropLine) -> LineJson {
    LineJson {
        center: point_to_json(&l.center),
        colour: l.colour.map(Into::into),
    }
}

impl ArrangementJson {
    pub fn from_arrangement(arr: &Arrangement) -> Self {
        ArrangementJson {
            lines: arr.lines().iter().map(line_to_json).collect(),
        }
    }

    pub fn to_arrangement(&self) -> CliResult<Arrangement> {
        let lines = self
            .lines
            .iter()
            .enumerate()
            .map(|(i, l)| {
                Ok(TropLine {
                    center: point_from_json(&l.center, &format!("lines[{i}].center"))?,
                    colour: l.colour.as_ref().map(Into::into),
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(Arrangement::new(lines)?)
    }
}

impl PointsJson {
    pub fn from_config(cfg: &PointConfig) -> Self {
        PointsJson {
            points: cfg.points().iter().map(point_to_json).collect(),
            colours: cfg.colours().map(|cs| cs.iter().map(|c| (*c).into()).collect()),
        }
    }

    pub fn to_config(&self) -> CliResult<PointConfig> {
        let pts = self
            .points
            .iter()
            .enumerate()
            .map(|(i, p)| point_from_json(p, &format!("points[{i}]")))
            .collect::<CliResult<Vec<_>>>()?;
        match &self.colours {
            None => Ok(PointConfig::new(pts)?),
            Some(cs) if cs.len() != pts.len() => Err(CliError::Field {
                field: "colours".into(),
                message: format!("{} colours for {} points", cs.len(), pts.len()),
            }),
            Some(cs) => Ok(PointConfig::coloured(
                pts.into_iter().zip(cs.iter().map(Into::into)).collect(),
            )?),
        }
    }
}

impl SubdivisionJson {
    pub fn from_subdivision(sub: &NewtonSubdivision) -> Self {
        SubdivisionJson {
            n: sub.n(),
            vertices: sub.vertices().iter().map(|p| lattice(*p)).collect(),
            edges: sub
                .edges()
                .iter()
                .map(|e| EdgeJson {
                    a: lattice(e.a),
                    b: lattice(e.b),
                    colour: None,
                })
                .collect(),
            faces: sub
                .faces()
                .iter()
                .map(|f| FaceJson {
                    cycle: f.cycle.iter().map(|p| lattice(*p)).collect(),
                    profile: f.profile().ok().map(|p| p.as_array()),
                })
                .collect(),
        }
    }

    pub fn with_colours(mut self, colours: &BTreeMap<Edge, Colour>) -> Self {
        for e in &mut self.edges {
            let key = Edge::new(from_lattice(&e.a), from_lattice(&e.b));
            e.colour = colours.get(&key).map(|c| (*c).into());
        }
        self
    }

    /// Rebuilds from the face cycles; listed vertices, edges and profiles must agree with them.
    pub fn to_subdivision(&self) -> CliResult<NewtonSubdivision> {
        let faces = self
            .faces
            .iter()
            .map(|f| f.cycle.iter().map(from_lattice).collect::<Vec<_>>());
        let sub = NewtonSubdivision::from_faces(self.n, faces)?;
        let canon = SubdivisionJson::from_subdivision(&sub);
        if !self.vertices.is_empty() {
            let mut vs = self.vertices.clone();
            vs.sort_by_key(from_lattice);
            vs.dedup();
            if vs != canon.vertices {
                return Err(CliError::Field {
                    field: "vertices".into(),
                    message: "do not match the faces".into(),
                });
            }
        }
        if !self.edges.is_empty() {
            let es: std::collections::BTreeSet<Edge> = self
                .edges
                .iter()
                .map(|e| Edge::new(from_lattice(&e.a), from_lattice(&e.b)))
                .collect();
            if es.len() != self.edges.len() || &es != sub.edges() {
                return Err(CliError::Field {
                    field: "edges".into(),
                    message: "do not match the faces".into(),
                });
            }
        }
        for (i, f) in self.faces.iter().enumerate() {
            let Some(p) = f.profile else { continue };
            let cycle: Vec<LatticePoint> = f.cycle.iter().map(from_lattice).collect();
            let actual = Face::from_cycle(&cycle)?.profile().ok().map(|p| p.as_array());
            if actual != Some(p) {
                return Err(CliError::Field {
                    field: format!("faces[{i}].profile"),
                    message: format!("{p:?} does not match the cycle"),
                });
            }
        }
        Ok(sub)
    }

    /// Edge colours, if every edge carries one.
    pub fn edge_colours(&self) -> CliResult<Option<BTreeMap<Edge, Colour>>> {
        let given: Vec<_> = self.edges.iter().filter(|e| e.colour.is_some()).collect();
        if given.is_empty() {
            return Ok(None);
        }
        if given.len() != self.edges.len() {
            return Err(CliError::Field {
                field: "edges".into(),
                message: "colours must be given for all edges or none".into(),
            });
        }
        Ok(Some(
            self.edges
                .iter()
                .map(|e| {
                    (
                        Edge::new(from_lattice(&e.a), from_lattice(&e.b)),
                        e.colour.as_ref().expect("checked").into(),
                    )
                })
                .collect(),
        ))
    }
}

impl MetricJson {
    pub fn from_metric(d: &ExactMetric) -> Self {
        MetricJson {
            edges: d
                .lengths
                .iter()
                .map(|(e, v)| LengthJson {
                    a: lattice(e.a),
                    b: lattice(e.b),
                    length: rational::to_string(v),
                })
                .collect(),
        }
    }

    pub fn to_metric(&self) -> CliResult<ExactMetric> {
        let lengths = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, l)| {
                let e = Edge::new(from_lattice(&l.a), from_lattice(&l.b));
                Ok((e, rat(&l.length, || format!("edges[{i}].length"))?))
            })
            .collect::<CliResult<_>>()?;
        Ok(ExactMetric { lengths })
    }
}

impl CertificateJson {
    pub fn new(cert: &Certificate, vertices: &[LatticePoint]) -> Self {
        CertificateJson {
            multipliers: vertices
                .iter()
                .enumerate()
                .map(|(i, v)| VertexMultiplierJson {
                    vertex: lattice(*v),
                    x: rational::to_string(&cert.multipliers[2 * i]),
                    y: rational::to_string(&cert.multipliers[2 * i + 1]),
                })
                .collect(),
        }
    }
}

impl SystemJson {
    pub fn to_system(&self) -> CliResult<LinearSystemSpec> {
        let sys = LinearSystemSpec {
            m: self.m,
            equalities: self.equalities.clone(),
            strict: self.strict.clone(),
        };
        sys.validate()?;
        Ok(sys)
    }
}

impl CensusJson {
    pub fn new(n: u32, c: Census) -> Self {
        CensusJson {
            n,
            triangles: c.triangles,
            parallelograms: c.parallelograms,
            hexagons: c.hexagons,
            other: c.other,
        }
    }
}

impl ClassifiedFaceJson {
    pub fn new(face: &Face, p: LocalProfile) -> Self {
        let shape = if p.is_triangle() {
            "triangle"
        } else if p.is_parallelogram() {
            "parallelogram"
        } else if p.is_hexagon() {
            "hexagon"
        } else {
            "other"
        };
        ClassifiedFaceJson {
            cycle: face.cycle.iter().map(|q| lattice(*q)).collect(),
            profile: Some(p.as_array()),
            shape: shape.into(),
        }
    }

    pub fn nonlinear(face: &Face) -> Self {
        ClassifiedFaceJson {
            cycle: face.cycle.iter().map(|q| lattice(*q)).collect(),
            profile: None,
            shape: "nonlinear".into(),
        }
    }
}

pub fn edge_to_json(e: &Edge) -> [LatticeJson; 2] {
    [lattice(e.a), lattice(e.b)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangement_round_trip() {
        let text = r#"{"lines":[{"center":["0","1/2"],"colour":"red"},{"center":["-3","2"],"colour":"blue"}]}"#;
        let a: ArrangementJson = parse(text, "arrangement").unwrap();
        let arr = a.to_arrangement().unwrap();
        assert_eq!(ArrangementJson::from_arrangement(&arr), a);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let a: ArrangementJson = parse(r#"{"lines":[{"center":["0","1/0"]}]}"#, "arrangement").unwrap();
        let err = a.to_arrangement().unwrap_err().to_string();
        assert!(err.contains("lines[0].center[1]"), "{err}");
        let err = parse::<ArrangementJson>("{\n \"lines\": [ {\"centre\": 1} ]}", "arrangement").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }), "{err}");
    }
}
