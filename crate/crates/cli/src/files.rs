//! JSON file formats: frameworks and colored multigraphs.

use bodycad_core::geometry::{Scalar, Vec3};
use bodycad_core::model::{Angle, Body, CadConstraint, ConstraintKind, Framework, Line, Payload, Plane};
use bodycad_core::sparsity::{Edge, EdgeColor, MultiGraph};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::number;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    Version(u64),
    #[error("graph: {0}")]
    Graph(#[from] bodycad_core::sparsity::SparsityError),
}

fn field_error(path: impl Into<String>, message: impl Into<String>) -> FileError {
    FileError::Field {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFramework {
    version: u64,
    bodies: Vec<RawBody>,
    #[serde(default)]
    constraints: Vec<Map<String, Value>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBody {
    id: usize,
    #[serde(default)]
    label: String,
}

/// Accessor for the fields of one constraint object, carrying its path for
/// error messages.
struct Fields<'a> {
    map: &'a Map<String, Value>,
    path: String,
}

impl Fields<'_> {
    fn get(&self, key: &str) -> Result<&Value, FileError> {
        self.map
            .get(key)
            .ok_or_else(|| field_error(&self.path, format!("missing field `{key}`")))
    }

    fn at(&self, key: &str) -> String {
        format!("{}.{key}", self.path)
    }

    fn scalar(&self, key: &str) -> Result<Scalar, FileError> {
        scalar_at(self.get(key)?, &self.at(key))
    }

    fn point(&self, key: &str) -> Result<Vec3, FileError> {
        vec3_at(self.get(key)?, &self.at(key))
    }

    fn line(&self, key: &str) -> Result<Line, FileError> {
        let path = self.at(key);
        let obj = object_at(self.get(key)?, &path, &["point", "direction"])?;
        Ok(Line::new(
            vec3_at(required(obj, "point", &path)?, &format!("{path}.point"))?,
            vec3_at(required(obj, "direction", &path)?, &format!("{path}.direction"))?,
        ))
    }

    fn plane(&self, key: &str) -> Result<Plane, FileError> {
        let path = self.at(key);
        let obj = object_at(self.get(key)?, &path, &["point", "normal", "direction"])?;
        let normal_key = match (obj.contains_key("normal"), obj.contains_key("direction")) {
            (true, true) => return Err(field_error(&path, "give either `normal` or `direction`, not both")),
            (false, true) => "direction",
            _ => "normal",
        };
        Ok(Plane::new(
            vec3_at(required(obj, "point", &path)?, &format!("{path}.point"))?,
            vec3_at(required(obj, normal_key, &path)?, &format!("{path}.{normal_key}"))?,
        ))
    }

    fn angle(&self, key: &str) -> Result<Angle, FileError> {
        let path = self.at(key);
        let obj = object_at(self.get(key)?, &path, &["cos", "degrees"])?;
        match (obj.get("cos"), obj.get("degrees")) {
            (Some(c), None) => {
                let cos = scalar_at(c, &format!("{path}.cos"))?;
                if cos.numer().magnitude() > cos.denom().magnitude() {
                    return Err(field_error(format!("{path}.cos"), "cosine outside [-1, 1]"));
                }
                Ok(Angle::from_cos(cos))
            }
            (None, Some(d)) => match d.as_f64() {
                Some(deg) if deg.is_finite() => Ok(Angle::from_degrees(deg)),
                _ => Err(field_error(format!("{path}.degrees"), "expected a number")),
            },
            _ => Err(field_error(&path, "expected exactly one of `cos` or `degrees`")),
        }
    }
}

fn required<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, FileError> {
    obj.get(key)
        .ok_or_else(|| field_error(path, format!("missing field `{key}`")))
}

fn object_at<'a>(v: &'a Value, path: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>, FileError> {
    let obj = v.as_object().ok_or_else(|| field_error(path, "expected an object"))?;
    if let Some(bad) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(field_error(path, format!("unknown field `{bad}`")));
    }
    Ok(obj)
}

fn scalar_at(v: &Value, path: &str) -> Result<Scalar, FileError> {
    number::from_json(v).ok_or_else(|| {
        field_error(
            path,
            format!("expected a number, a decimal string or a \"num/den\" string, got {v}"),
        )
    })
}

fn vec3_at(v: &Value, path: &str) -> Result<Vec3, FileError> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y, z]) => Ok(Vec3::new(
            scalar_at(x, &format!("{path}[0]"))?,
            scalar_at(y, &format!("{path}[1]"))?,
            scalar_at(z, &format!("{path}[2]"))?,
        )),
        _ => Err(field_error(path, "expected an array of three numbers")),
    }
}

/// Payload field names per kind, in output order.
fn payload_keys(kind: ConstraintKind) -> &'static [&'static str] {
    use ConstraintKind as K;
    match kind {
        K::PointPointCoincidence => &["point"],
        K::PointPointDistance => &["point_i", "point_j", "distance"],
        K::PointLineCoincidence => &["point_i", "line_j"],
        K::PointLineDistance => &["point_i", "line_j", "distance"],
        K::PointPlaneCoincidence => &["point_i", "plane_j"],
        K::PointPlaneDistance => &["point_i", "plane_j", "distance"],
        K::LineLineParallel => &["point_i", "point_j", "direction"],
        K::LineLinePerpendicular => &["line_i", "line_j"],
        K::LineLineFixedAngular => &["line_i", "line_j", "angle"],
        K::LineLineCoincidence => &["line"],
        K::LineLineDistance => &["line_i", "line_j", "distance"],
        K::LinePlaneParallel | K::LinePlanePerpendicular | K::LinePlaneCoincidence => &["line_i", "plane_j"],
        K::LinePlaneFixedAngular => &["line_i", "plane_j", "angle"],
        K::LinePlaneDistance => &["line_i", "plane_j", "distance"],
        K::PlanePlaneParallel => &["point_i", "point_j", "normal"],
        K::PlanePlanePerpendicular => &["plane_i", "plane_j"],
        K::PlanePlaneFixedAngular => &["plane_i", "plane_j", "angle"],
        K::PlanePlaneCoincidence => &["plane"],
        K::PlanePlaneDistance => &["point_i", "point_j", "normal", "distance"],
    }
}

fn payload_from(kind: ConstraintKind, f: &Fields) -> Result<Payload, FileError> {
    use ConstraintKind as K;
    Ok(match kind {
        K::PointPointCoincidence => Payload::PointPointCoincidence {
            point: f.point("point")?,
        },
        K::PointPointDistance => Payload::PointPointDistance {
            point_i: f.point("point_i")?,
            point_j: f.point("point_j")?,
            distance: f.scalar("distance")?,
        },
        K::PointLineCoincidence => Payload::PointLineCoincidence {
            point_i: f.point("point_i")?,
            line_j: f.line("line_j")?,
        },
        K::PointLineDistance => Payload::PointLineDistance {
            point_i: f.point("point_i")?,
            line_j: f.line("line_j")?,
            distance: f.scalar("distance")?,
        },
        K::PointPlaneCoincidence => Payload::PointPlaneCoincidence {
            point_i: f.point("point_i")?,
            plane_j: f.plane("plane_j")?,
        },
        K::PointPlaneDistance => Payload::PointPlaneDistance {
            point_i: f.point("point_i")?,
            plane_j: f.plane("plane_j")?,
            distance: f.scalar("distance")?,
        },
        K::LineLineParallel => Payload::LineLineParallel {
            point_i: f.point("point_i")?,
            point_j: f.point("point_j")?,
            direction: f.point("direction")?,
        },
        K::LineLinePerpendicular => Payload::LineLinePerpendicular {
            line_i: f.line("line_i")?,
            line_j: f.line("line_j")?,
        },
        K::LineLineFixedAngular => Payload::LineLineFixedAngular {
            line_i: f.line("line_i")?,
            line_j: f.line("line_j")?,
            angle: f.angle("angle")?,
        },
        K::LineLineCoincidence => Payload::LineLineCoincidence { line: f.line("line")? },
        K::LineLineDistance => Payload::LineLineDistance {
            line_i: f.line("line_i")?,
            line_j: f.line("line_j")?,
            distance: f.scalar("distance")?,
        },
        K::LinePlaneParallel => Payload::LinePlaneParallel {
            line_i: f.line("line_i")?,
            plane_j: f.plane("plane_j")?,
        },
        K::LinePlanePerpendicular => Payload::LinePlanePerpendicular {
            line_i: f.line("line_i")?,
            plane_j: f.plane("plane_j")?,
        },
        K::LinePlaneFixedAngular => Payload::LinePlaneFixedAngular {
            line_i: f.line("line_i")?,
            plane_j: f.plane("plane_j")?,
            angle: f.angle("angle")?,
        },
        K::LinePlaneCoincidence => Payload::LinePlaneCoincidence {
            line_i: f.line("line_i")?,
            plane_j: f.plane("plane_j")?,
        },
        K::LinePlaneDistance => Payload::LinePlaneDistance {
            line_i: f.line("line_i")?,
            plane_j: f.plane("plane_j")?,
            distance: f.scalar("distance")?,
        },
        K::PlanePlaneParallel => Payload::PlanePlaneParallel {
            point_i: f.point("point_i")?,
            point_j: f.point("point_j")?,
            normal: f.point("normal")?,
        },
        K::PlanePlanePerpendicular => Payload::PlanePlanePerpendicular {
            plane_i: f.plane("plane_i")?,
            plane_j: f.plane("plane_j")?,
        },
        K::PlanePlaneFixedAngular => Payload::PlanePlaneFixedAngular {
            plane_i: f.plane("plane_i")?,
            plane_j: f.plane("plane_j")?,
            angle: f.angle("angle")?,
        },
        K::PlanePlaneCoincidence => Payload::PlanePlaneCoincidence {
            plane: f.plane("plane")?,
        },
        K::PlanePlaneDistance => Payload::PlanePlaneDistance {
            point_i: f.point("point_i")?,
            point_j: f.point("point_j")?,
            normal: f.point("normal")?,
            distance: f.scalar("distance")?,
        },
    })
}

fn body_id_at(v: Option<&Value>, path: &str) -> Result<usize, FileError> {
    v.and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| field_error(path, "expected a positive body id"))
}

fn constraint_from(map: &Map<String, Value>, index: usize) -> Result<CadConstraint, FileError> {
    let path = format!("constraints[{index}]");
    let kind = match map.get("kind") {
        Some(Value::String(name)) => ConstraintKind::from_name(name)
            .ok_or_else(|| field_error(format!("{path}.kind"), format!("unknown constraint kind `{name}`")))?,
        Some(Value::Number(n)) => n
            .as_u64()
            .filter(|k| (1..=21).contains(k))
            .map(|k| ConstraintKind::ALL[k as usize - 1])
            .ok_or_else(|| field_error(format!("{path}.kind"), "kind numbers run from 1 to 21"))?,
        _ => return Err(field_error(&path, "missing or malformed field `kind`")),
    };
    let keys = payload_keys(kind);
    if let Some(bad) = map
        .keys()
        .find(|k| !["kind", "i", "j"].contains(&k.as_str()) && !keys.contains(&k.as_str()))
    {
        return Err(field_error(&path, format!("unknown field `{bad}` for kind {kind}")));
    }
    let i = body_id_at(map.get("i"), &format!("{path}.i"))?;
    let j = body_id_at(map.get("j"), &format!("{path}.j"))?;
    let payload = payload_from(kind, &Fields { map, path })?;
    Ok(CadConstraint::new(i, j, payload))
}

/// Parse a framework file. Consistency of the geometry is checked later by
/// validation, not here.
pub fn parse_framework(text: &str) -> Result<Framework, FileError> {
    let raw: RawFramework = serde_json::from_str(text)?;
    if raw.version != FORMAT_VERSION {
        return Err(FileError::Version(raw.version));
    }
    let bodies = raw
        .bodies
        .into_iter()
        .map(|b| Body {
            id: b.id,
            label: b.label,
        })
        .collect();
    let constraints = raw
        .constraints
        .iter()
        .enumerate()
        .map(|(k, m)| constraint_from(m, k))
        .collect::<Result<_, _>>()?;
    Ok(Framework { bodies, constraints })
}

fn vec3_json(v: &Vec3) -> Value {
    json!([number::to_json(&v.x), number::to_json(&v.y), number::to_json(&v.z)])
}

fn line_json(l: &Line) -> Value {
    json!({"point": vec3_json(&l.point), "direction": vec3_json(&l.direction)})
}

fn plane_json(p: &Plane) -> Value {
    json!({"point": vec3_json(&p.point), "normal": vec3_json(&p.normal)})
}

fn angle_json(a: &Angle) -> Value {
    match a.degrees {
        Some(d) => json!({ "degrees": d }),
        None => json!({ "cos": number::to_json(&a.cos) }),
    }
}

fn payload_values(p: &Payload) -> Vec<Value> {
    use Payload as P;
    let s = number::to_json;
    match p {
        P::PointPointCoincidence { point } => vec![vec3_json(point)],
        P::PointPointDistance {
            point_i,
            point_j,
            distance,
        } => {
            vec![vec3_json(point_i), vec3_json(point_j), s(distance)]
        }
        P::PointLineCoincidence { point_i, line_j } => vec![vec3_json(point_i), line_json(line_j)],
        P::PointLineDistance {
            point_i,
            line_j,
            distance,
        } => {
            vec![vec3_json(point_i), line_json(line_j), s(distance)]
        }
        P::PointPlaneCoincidence { point_i, plane_j } => vec![vec3_json(point_i), plane_json(plane_j)],
        P::PointPlaneDistance {
            point_i,
            plane_j,
            distance,
        } => {
            vec![vec3_json(point_i), plane_json(plane_j), s(distance)]
        }
        P::LineLineParallel {
            point_i,
            point_j,
            direction,
        } => {
            vec![vec3_json(point_i), vec3_json(point_j), vec3_json(direction)]
        }
        P::LineLinePerpendicular { line_i, line_j } => vec![line_json(line_i), line_json(line_j)],
        P::LineLineFixedAngular { line_i, line_j, angle } => {
            vec![line_json(line_i), line_json(line_j), angle_json(angle)]
        }
        P::LineLineCoincidence { line } => vec![line_json(line)],
        P::LineLineDistance {
            line_i,
            line_j,
            distance,
        } => {
            vec![line_json(line_i), line_json(line_j), s(distance)]
        }
        P::LinePlaneParallel { line_i, plane_j }
        | P::LinePlanePerpendicular { line_i, plane_j }
        | P::LinePlaneCoincidence { line_i, plane_j } => vec![line_json(line_i), plane_json(plane_j)],
        P::LinePlaneFixedAngular { line_i, plane_j, angle } => {
            vec![line_json(line_i), plane_json(plane_j), angle_json(angle)]
        }
        P::LinePlaneDistance {
            line_i,
            plane_j,
            distance,
        } => {
            vec![line_json(line_i), plane_json(plane_j), s(distance)]
        }
        P::PlanePlaneParallel {
            point_i,
            point_j,
            normal,
        } => {
            vec![vec3_json(point_i), vec3_json(point_j), vec3_json(normal)]
        }
        P::PlanePlanePerpendicular { plane_i, plane_j } => vec![plane_json(plane_i), plane_json(plane_j)],
        P::PlanePlaneFixedAngular {
            plane_i,
            plane_j,
            angle,
        } => {
            vec![plane_json(plane_i), plane_json(plane_j), angle_json(angle)]
        }
        P::PlanePlaneCoincidence { plane } => vec![plane_json(plane)],
        P::PlanePlaneDistance {
            point_i,
            point_j,
            normal,
            distance,
        } => {
            vec![vec3_json(point_i), vec3_json(point_j), vec3_json(normal), s(distance)]
        }
    }
}

pub fn framework_to_value(fw: &Framework) -> Value {
    let bodies: Vec<Value> = fw
        .bodies
        .iter()
        .map(|b| json!({"id": b.id, "label": b.label}))
        .collect();
    let constraints: Vec<Value> = fw
        .constraints
        .iter()
        .map(|c| {
            let kind = c.kind();
            let mut obj = Map::new();
            obj.insert("kind".into(), json!(kind.name()));
            obj.insert("i".into(), json!(c.i));
            obj.insert("j".into(), json!(c.j));
            for (key, value) in payload_keys(kind).iter().zip(payload_values(&c.payload)) {
                obj.insert((*key).into(), value);
            }
            Value::Object(obj)
        })
        .collect();
    json!({"version": FORMAT_VERSION, "bodies": bodies, "constraints": constraints})
}

fn compact_list(items: &[Value]) -> String {
    if items.is_empty() {
        return "[]".into();
    }
    let lines: Vec<String> = items
        .iter()
        .map(|v| format!("    {}", serde_json::to_string(v).expect("values serialize")))
        .collect();
    format!("[\n{}\n  ]", lines.join(",\n"))
}

/// JSON with one body or constraint per line; parses back to an equal
/// framework.
pub fn framework_to_json(fw: &Framework) -> String {
    let v = framework_to_value(fw);
    let list = |key: &str| compact_list(v[key].as_array().map(Vec::as_slice).unwrap_or_default());
    format!(
        "{{\n  \"version\": {FORMAT_VERSION},\n  \"bodies\": {},\n  \"constraints\": {}\n}}\n",
        list("bodies"),
        list("constraints")
    )
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
struct RawGraph {
    vertex_count: usize,
    edges: Vec<RawEdge>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    u: usize,
    v: usize,
    #[serde(default)]
    color: RawColor,
}

#[derive(Debug, Default, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawColor {
    Red,
    Black,
    #[default]
    None,
}

/// Parse a graph file: `{"vertexCount": n, "edges": [{"u","v","color"}]}` with
/// 0-based vertices and colors `red`, `black` or `none`.
pub fn parse_graph(text: &str) -> Result<MultiGraph, FileError> {
    let raw: RawGraph = serde_json::from_str(text)?;
    let edges = raw
        .edges
        .iter()
        .map(|e| match e.color {
            RawColor::Red => Edge::colored(e.u, e.v, EdgeColor::Red),
            RawColor::Black => Edge::colored(e.u, e.v, EdgeColor::Black),
            RawColor::None => Edge::new(e.u, e.v),
        })
        .collect();
    Ok(MultiGraph::new(raw.vertex_count, edges)?)
}

pub fn color_name(color: Option<EdgeColor>) -> &'static str {
    color.map_or("none", EdgeColor::name)
}

pub fn graph_to_json(g: &MultiGraph) -> String {
    let raw = RawGraph {
        vertex_count: g.vertex_count(),
        edges: g
            .edges()
            .iter()
            .map(|e| RawEdge {
                u: e.u,
                v: e.v,
                color: match e.color {
                    Some(EdgeColor::Red) => RawColor::Red,
                    Some(EdgeColor::Black) => RawColor::Black,
                    None => RawColor::None,
                },
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("graph serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use bodycad_core::fixtures;
    use bodycad_core::geometry::ratio;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixtures_round_trip() {
        for (name, fw) in fixtures::corpus() {
            assert_eq!(parse_framework(&framework_to_json(&fw)).unwrap(), fw, "{name}");
        }
    }

    #[test]
    fn random_frameworks_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let fw = bodycad_core::synth::random_framework(&mut rng, 4, 8);
            let text = framework_to_json(&fw);
            let back = parse_framework(&text).unwrap();
            assert_eq!(back, fw);
            assert_eq!(framework_to_json(&back), text);
        }
    }

    #[test]
    fn degrees_survive_a_round_trip() {
        let text = r#"{"version":1,"bodies":[{"id":1,"label":"A"},{"id":2,"label":"B"}],
            "constraints":[{"kind":"plane_plane_fixed_angular","i":1,"j":2,
            "plane_i":{"point":[0,0,0],"normal":[0,0,1]},
            "plane_j":{"point":[0,0,0],"direction":[0,1,1]},
            "angle":{"degrees":45}}]}"#;
        let fw = parse_framework(text).unwrap();
        assert_eq!(parse_framework(&framework_to_json(&fw)).unwrap(), fw);
    }

    #[test]
    fn number_forms_in_files() {
        let text = r#"{"version":1,"bodies":[{"id":1,"label":"A"},{"id":2,"label":"B"}],
            "constraints":[{"kind":"point_point_distance","i":1,"j":2,
            "point_i":[0.5,"1/3",0],"point_j":["0.5","1/3","2.25"],"distance":"9/4"}]}"#;
        let fw = parse_framework(text).unwrap();
        let Payload::PointPointDistance { point_i, distance, .. } = &fw.constraints[0].payload else {
            panic!()
        };
        assert_eq!(point_i.x, ratio(1, 2));
        assert_eq!(point_i.y, ratio(1, 3));
        assert_eq!(*distance, ratio(9, 4));
    }

    #[test]
    fn errors_name_the_field() {
        let cases = [
            (
                r#"{"version":1,"bodies":[],"constraints":[{"kind":"nope","i":1,"j":2}]}"#,
                "constraints[0].kind",
            ),
            (
                r#"{"version":1,"bodies":[],"constraints":[{"kind":"point_point_coincidence","i":1,"j":2,"point":[1,2]}]}"#,
                "constraints[0].point",
            ),
            (
                r#"{"version":1,"bodies":[],"constraints":[{"kind":"line_line_coincidence","i":1,"j":2,"line":{"point":[0,0,0]}}]}"#,
                "missing field `direction`",
            ),
            (
                r#"{"version":1,"bodies":[],"constraints":[{"kind":"point_point_coincidence","i":1,"j":2,"point":[0,0,0],"extra":1}]}"#,
                "unknown field `extra`",
            ),
            (r#"{"version":2,"bodies":[]}"#, "version 2"),
            ("{\"version\":1,\n\"bodies\": [,]}", "line 2"),
        ];
        for (text, needle) in cases {
            let err = parse_framework(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{err}");
        }
    }

    #[test]
    fn graphs_round_trip() {
        let text =
            r#"{"vertexCount":3,"edges":[{"u":0,"v":1,"color":"red"},{"u":1,"v":2},{"u":2,"v":0,"color":"black"}]}"#;
        let g = parse_graph(text).unwrap();
        assert_eq!(g.edges()[1].color, None);
        assert_eq!(g.red_count(), 1);
        assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
        assert!(parse_graph(r#"{"vertexCount":2,"edges":[{"u":0,"v":5}]}"#).is_err());
    }
}
