//! JSON documents and graph export.
//!
//! Every document type here is a plain serde structure. Parsing goes through
//! [`parse`], which reports the location of a malformed value as a JSON
//! pointer (`/arrows/2/src`). Conversion into library objects repeats that
//! for semantic problems that are local to one value, such as an arrow
//! endpoint out of range.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cluster::{monomial_string, parse_monomial, Seed, Semifield};
use crate::covering::{Automorphism, Covering};
use crate::error::{Error, Result};
use crate::mutation::{init_tracked, DeletedPair, TrackedQuiverWithHomotopy};
use crate::oracle::{
    default_search_bound, Certificate, Homotopy, HomotopyOracle, Membership, Witness,
};
use crate::quiver::{Arrow, ArrowId, Quiver, VertexId};
use crate::walk::{Step, Walk};

/// Parses a document, reporting the failing location as a JSON pointer.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        let message = e.into_inner().to_string();
        Error::Schema { pointer, message }
    })
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

/// Pretty JSON text of a document.
pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub id: ArrowId,
    pub src: VertexId,
    pub tgt: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// `{"vertices": n, "arrows": [{"id", "src", "tgt", "label"?}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    pub vertices: usize,
    pub arrows: Vec<ArrowJson>,
}

impl QuiverJson {
    pub fn from_quiver(q: &Quiver) -> QuiverJson {
        QuiverJson {
            vertices: q.vertex_count(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowJson {
                    id: a.id,
                    src: a.src,
                    tgt: a.tgt,
                    label: a.label.clone(),
                })
                .collect(),
        }
    }

    /// Builds the quiver; `at` is the pointer of this document.
    pub fn to_quiver_at(&self, at: &str) -> Result<Quiver> {
        let n = self.vertices;
        let mut ids = std::collections::BTreeSet::new();
        for (i, a) in self.arrows.iter().enumerate() {
            for (field, v) in [("src", a.src), ("tgt", a.tgt)] {
                if v >= n {
                    return Err(schema(
                        format!("{at}/arrows/{i}/{field}"),
                        format!("vertex {v} is outside 0..{n}"),
                    ));
                }
            }
            if !ids.insert(a.id) {
                return Err(schema(
                    format!("{at}/arrows/{i}/id"),
                    format!("duplicate arrow id {}", a.id),
                ));
            }
        }
        Quiver::from_arrows(
            n,
            self.arrows
                .iter()
                .map(|a| Arrow {
                    id: a.id,
                    src: a.src,
                    tgt: a.tgt,
                    label: a.label.clone(),
                })
                .collect(),
        )
        .map_err(|e| schema(at, e.to_string()))
    }

    pub fn to_quiver(&self) -> Result<Quiver> {
        self.to_quiver_at("")
    }
}

/// One step of a walk: the arrow and `+1` (forwards) or `-1` (backwards).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepJson {
    pub arrow: ArrowId,
    pub sign: i32,
}

pub fn walk_json(w: &Walk) -> Vec<StepJson> {
    w.steps()
        .iter()
        .map(|s| StepJson {
            arrow: s.arrow,
            sign: s.sign(),
        })
        .collect()
}

/// A non-empty walk from its steps in traversal order.
pub fn walk_from_json(q: &Quiver, steps: &[StepJson], at: &str) -> Result<Walk> {
    let mut out = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        if !q.contains(s.arrow) {
            return Err(schema(
                format!("{at}/{i}/arrow"),
                format!("arrow {} does not exist", s.arrow),
            ));
        }
        out.push(match s.sign {
            1 => Step::forward(s.arrow),
            -1 => Step::backward(s.arrow),
            other => {
                return Err(schema(
                    format!("{at}/{i}/sign"),
                    format!("sign must be 1 or -1, not {other}"),
                ))
            }
        });
    }
    Walk::from_steps(q, out).map_err(|e| schema(at, e.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomotopyKind {
    Trivial,
    Full,
    Generated,
    Abelian,
    Cover,
}

/// `{"type", "generators"?, "cover"?, "search_bound"?}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomotopyJson {
    #[serde(rename = "type")]
    pub kind: HomotopyKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<StepJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoveringJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_bound: Option<usize>,
}

impl HomotopyJson {
    pub fn from_homotopy(h: &Homotopy) -> HomotopyJson {
        let plain = |kind| HomotopyJson {
            kind,
            generators: Vec::new(),
            cover: None,
            search_bound: None,
        };
        match h {
            Homotopy::Trivial => plain(HomotopyKind::Trivial),
            Homotopy::Full => plain(HomotopyKind::Full),
            Homotopy::Generated {
                generators,
                search_bound,
            } => HomotopyJson {
                generators: generators.iter().map(walk_json).collect(),
                search_bound: (*search_bound != default_search_bound()).then_some(*search_bound),
                ..plain(HomotopyKind::Generated)
            },
            Homotopy::AbelianQuotient { generators } => HomotopyJson {
                generators: generators.iter().map(walk_json).collect(),
                ..plain(HomotopyKind::Abelian)
            },
            Homotopy::FiniteCover { covering } => HomotopyJson {
                cover: Some(CoveringJson::from_covering(covering)),
                ..plain(HomotopyKind::Cover)
            },
        }
    }

    /// The homotopy on `q`; `at` is the pointer of this document.
    pub fn to_homotopy_at(&self, q: &Quiver, at: &str) -> Result<Homotopy> {
        let walks = || -> Result<Vec<Walk>> {
            self.generators
                .iter()
                .enumerate()
                .map(|(i, g)| walk_from_json(q, g, &format!("{at}/generators/{i}")))
                .collect()
        };
        Ok(match self.kind {
            HomotopyKind::Trivial => Homotopy::Trivial,
            HomotopyKind::Full => Homotopy::Full,
            HomotopyKind::Generated => Homotopy::Generated {
                generators: walks()?,
                search_bound: self.search_bound.unwrap_or_else(default_search_bound),
            },
            HomotopyKind::Abelian => Homotopy::AbelianQuotient {
                generators: walks()?,
            },
            HomotopyKind::Cover => {
                let c = self.cover.as_ref().ok_or_else(|| {
                    schema(format!("{at}/cover"), "a cover homotopy needs `cover`")
                })?;
                Homotopy::FiniteCover {
                    covering: c.to_covering_at(&format!("{at}/cover"))?,
                }
            }
        })
    }

    /// The oracle for this homotopy on `q`.
    pub fn to_oracle(&self, q: &Quiver, at: &str) -> Result<HomotopyOracle> {
        HomotopyOracle::new(q, self.to_homotopy_at(q, at)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeckJson {
    pub vperm: Vec<VertexId>,
    pub aperm: Vec<usize>,
}

/// `{"total", "base", "vmap", "amap", "deck"?}`. `amap[i]` is the id of the
/// base arrow under the total arrow at position `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringJson {
    pub total: QuiverJson,
    pub base: QuiverJson,
    pub vmap: Vec<VertexId>,
    pub amap: Vec<ArrowId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deck: Option<Vec<DeckJson>>,
}

impl CoveringJson {
    pub fn from_covering(c: &Covering) -> CoveringJson {
        CoveringJson {
            total: QuiverJson::from_quiver(c.total()),
            base: QuiverJson::from_quiver(c.base()),
            vmap: c.vertex_map().to_vec(),
            amap: c.arrow_map().to_vec(),
            deck: None,
        }
    }

    pub fn to_covering_at(&self, at: &str) -> Result<Covering> {
        let total = self.total.to_quiver_at(&format!("{at}/total"))?;
        let base = self.base.to_quiver_at(&format!("{at}/base"))?;
        let c = Covering::new(total, base, self.vmap.clone(), self.amap.clone())
            .map_err(|e| schema(at, e.to_string()))?;
        match &self.deck {
            None => Ok(c),
            Some(deck) => c
                .with_deck(
                    deck.iter()
                        .map(|d| Automorphism {
                            vertices: d.vperm.clone(),
                            arrows: d.aperm.clone(),
                        })
                        .collect(),
                )
                .map_err(|e| schema(format!("{at}/deck"), e.to_string())),
        }
    }

    pub fn to_covering(&self) -> Result<Covering> {
        self.to_covering_at("")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemifieldKind {
    Trivial,
    Tropical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemifieldJson {
    #[serde(rename = "type")]
    pub kind: SemifieldKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gens: Vec<String>,
}

/// `{"quiver", "homotopy", "semifield"?, "coeffs"?, "principal"?}`. With
/// `principal` set, the semifield and coefficients are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedJson {
    pub quiver: QuiverJson,
    pub homotopy: HomotopyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semifield: Option<SemifieldJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coeffs: Vec<String>,
    #[serde(default)]
    pub principal: bool,
}

impl SeedJson {
    /// The initial seed described by the document.
    pub fn to_seed(&self) -> Result<Seed> {
        let q = self.quiver.to_quiver_at("/quiver")?;
        let oracle = self.homotopy.to_oracle(&q, "/homotopy")?;
        let tq = init_tracked(&q, oracle)?;
        if self.principal {
            return Ok(Seed::principal(tq));
        }
        match &self.semifield {
            None => Ok(Seed::trivial(tq)),
            Some(sf) if sf.kind == SemifieldKind::Trivial => Ok(Seed::trivial(tq)),
            Some(sf) => {
                let n = q.vertex_count();
                if self.coeffs.len() != n {
                    return Err(schema(
                        "/coeffs",
                        format!("expected {n} coefficients, found {}", self.coeffs.len()),
                    ));
                }
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| {
                        parse_monomial(c, &sf.gens)
                            .map_err(|e| schema(format!("/coeffs/{i}"), e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Seed::new(
                    tq,
                    Semifield::Tropical {
                        gens: sf.gens.clone(),
                    },
                    coeffs,
                )
            }
        }
    }

    /// Describes the initial seed of the pattern `s` belongs to, with the
    /// quiver, homotopy and coefficients `s` started from.
    pub fn from_initial_seed(s: &Seed) -> SeedJson {
        let tq = s.tracked();
        let principal = s.is_principal();
        let (semifield, coeffs) = match s.semifield() {
            _ if principal => (None, Vec::new()),
            Semifield::Trivial => (None, Vec::new()),
            Semifield::Tropical { gens } => (
                Some(SemifieldJson {
                    kind: SemifieldKind::Tropical,
                    gens: gens.clone(),
                }),
                s.coeffs()
                    .iter()
                    .map(|c| {
                        let m = monomial_string(c, gens);
                        if m.is_empty() {
                            "1".into()
                        } else {
                            m
                        }
                    })
                    .collect(),
            ),
        };
        SeedJson {
            quiver: QuiverJson::from_quiver(tq.base()),
            homotopy: HomotopyJson::from_homotopy(tq.oracle().homotopy()),
            semifield,
            coeffs,
            principal,
        }
    }
}

fn bigints(v: &[num_bigint::BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// A membership answer with its evidence, walks shown in right-to-left
/// notation over `q`.
pub fn membership_json(q: &Quiver, m: &Membership) -> Value {
    match m {
        Membership::In(w) => {
            let witness = match w {
                Witness::Full => json!({"kind": "Full"}),
                Witness::Decomposition(cs) => json!({
                    "kind": "Decomposition",
                    "conjugates": cs.iter().map(|c| json!({
                        "path": c.path.display(q),
                        "generator": c.generator,
                        "inverse": c.inverse,
                    })).collect::<Vec<_>>(),
                }),
                Witness::LatticeCombination(c) => {
                    json!({"kind": "LatticeCombination", "coefficients": bigints(c)})
                }
                Witness::ClosedLift { start } => json!({"kind": "ClosedLift", "start": start}),
            };
            json!({"verdict": "In", "witness": witness})
        }
        Membership::NotIn(c) => {
            let certificate = match c {
                Certificate::NonEmptyReducedWord { images, residual } => json!({
                    "kind": c.tag(),
                    "images": images,
                    "residual": residual,
                }),
                Certificate::AbelianObstruction {
                    functional,
                    modulus,
                } => json!({
                    "kind": c.tag(),
                    "functional": bigints(functional),
                    "modulus": modulus.to_string(),
                }),
                Certificate::NonClosedLift { start, end } => {
                    json!({"kind": c.tag(), "start": start, "end": end})
                }
            };
            json!({"verdict": "NotIn", "certificate": certificate})
        }
        Membership::Unknown(why) => json!({"verdict": "Unknown", "reason": why}),
    }
}

/// The outcome of a mutation sequence: the final quiver, the base walk of
/// every arrow and, per step, the 2-cycles that were deleted.
pub fn mutation_result_json(
    t: &TrackedQuiverWithHomotopy,
    deletions: &[Vec<DeletedPair>],
) -> Value {
    let base = t.base();
    let q = t.current();
    let words: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| {
            let w = t.word(a.id);
            json!({
                "id": a.id,
                "label": q.label(a.id),
                "src": a.src,
                "tgt": a.tgt,
                "base_word": walk_json(w),
                "display": w.display(base),
            })
        })
        .collect();
    let steps: Vec<Value> = t
        .log()
        .iter()
        .zip(deletions)
        .map(|(k, pairs)| {
            json!({
                "at": k,
                "deleted": pairs.iter().map(|p| json!({
                    "i": p.i,
                    "j": p.j,
                    "gamma": p.gamma_label,
                    "delta": p.delta_label,
                    "membership": membership_json(base, &p.membership),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "quiver": QuiverJson::from_quiver(q),
        "sequence": t.log(),
        "arrow_words": words,
        "steps": steps,
    })
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text with one edge per arrow, labelled by the arrow label. Vertices
/// are listed first, then arrows by id, so the output is canonical.
pub fn quiver_to_dot(q: &Quiver, name: &str) -> String {
    let mut s = format!("digraph \"{}\" {{\n", dot_escape(name));
    for v in 0..q.vertex_count() {
        s.push_str(&format!("  {v};\n"));
    }
    for a in q.arrows() {
        s.push_str(&format!(
            "  {} -> {} [label=\"{}\"];\n",
            a.src,
            a.tgt,
            dot_escape(&q.label(a.id))
        ));
    }
    s.push_str("}\n");
    s
}

/// GraphML text of the quiver, arrow labels as an edge attribute.
pub fn quiver_to_graphml(q: &Quiver) -> String {
    let esc = |s: &str| {
        s.replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;")
            .replace('"', "&quot;")
    };
    let mut s = String::from(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n  \
         <key id=\"label\" for=\"edge\" attr.name=\"label\" attr.type=\"string\"/>\n  \
         <graph edgedefault=\"directed\">\n",
    );
    for v in 0..q.vertex_count() {
        s.push_str(&format!("    <node id=\"v{v}\"/>\n"));
    }
    for a in q.arrows() {
        s.push_str(&format!(
            "    <edge id=\"a{}\" source=\"v{}\" target=\"v{}\"><data key=\"label\">{}</data></edge>\n",
            a.id,
            a.src,
            a.tgt,
            esc(&q.label(a.id))
        ));
    }
    s.push_str("  </graph>\n</graphml>\n");
    s
}

/// Order-insensitive description of a quiver: `(label, src, tgt)` triples,
/// sorted. Two quivers with the same arrows in a different order or with
/// different ids compare equal.
pub fn arrow_set(q: &Quiver) -> Vec<(String, VertexId, VertexId)> {
    let mut v: Vec<_> = q
        .arrows()
        .iter()
        .map(|a| (q.label(a.id), a.src, a.tgt))
        .collect();
    v.sort();
    v
}
