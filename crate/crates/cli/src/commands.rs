//! Subcommands. Each returns a JSON report and an exit code; input problems
//! come back as `Err` and map to exit code 2.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use dgpair::artin::{make_small_extension, ArtinAlgebra, NilElement};
use dgpair::catalog::{self, compute_properties};
use dgpair::cone::{
    build_cone, cone_les_check, gamma_map, lift_mc, mc_pair_failures, mc_pair_residuals,
    mc_pair_verify, obstruction_class, pair_equiv_verify, sample_mc, tangent_space, ConeElem,
    EquivWitness, LiftOutcome, PairDiagram, PairMCWitness, TensorPair,
};
use dgpair::dgla::{validate_dgla, validate_morphism, CohomologyTable, DglaMorphism};
use dgpair::graded::shift;
use dgpair::lie::{is_mc, DgLie, GradedElement};
use dgpair::linf::{
    self, dgla_to_linf, gauge_to_homotopy, homotopy_to_gauge, mc_infinity_residual,
    mc_infinity_verify, validate_linf, HomotopyPath, TransferMode, TransferredLinf,
};
use dgpair::path::samples::{cone_element, member};
use dgpair::path::{barycentric_embed, contraction_check, HDgla, KDgla, PathElement};
use dgpair::sample;
use dgpair::sparse::SparseVec;
use dgpair::Q;

use crate::acceptance;
use crate::format::{self, DiagramDocument, RingDecl};

#[derive(Parser, Debug)]
#[command(
    name = "dgpair",
    version,
    about = "Deformations of DGLA pairs with exact arithmetic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Diagram file in the `.dgp` format.
    pub file: Option<PathBuf>,
    /// Use a catalog entry instead of a file.
    #[arg(long, conflicts_with = "file")]
    pub catalog: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct Pick {
    /// Source witness (default: the first one).
    #[arg(long)]
    pub from: Option<String>,
    /// Target witness (default: the second one).
    #[arg(long)]
    pub to: Option<String>,
    /// Equivalence (default: the first one).
    #[arg(long)]
    pub equivalence: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Tree,
    Closed,
    Both,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check DGLA and morphism axioms, and pinned properties if present.
    Validate(Source),
    /// Cohomology of the cone.
    Cohomology {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        degree: Option<i32>,
    },
    /// Build the cone, check D² = 0 and the long exact sequence.
    Cone(Source),
    /// The comparison map to the cone of N -> coker(h).
    Gamma(Source),
    /// Transferred brackets on random cone vectors.
    Transfer {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generalized Jacobi identities of the transferred structure.
    Linf {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = linf::DEFAULT_ARITY_CAP)]
        arity: usize,
        #[arg(long, default_value_t = 3)]
        weight: usize,
        #[arg(long, value_enum, default_value_t = Mode::Closed)]
        mode: Mode,
    },
    /// Contraction identities for the path model of the cone.
    Contraction {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_t: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Bernoulli numbers and the coefficients of the closed brackets.
    Bernoulli {
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Maurer-Cartan equations of a witness.
    McVerify {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        witness: Option<String>,
    },
    /// Check that an equivalence carries one witness to another.
    EquivVerify {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        pick: Pick,
    },
    /// Maurer-Cartan equation of the transferred structure.
    McInfinityVerify {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        witness: Option<String>,
    },
    /// Homotopy over C[s, ds] from an equivalence.
    GaugeToHomotopy {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        pick: Pick,
    },
    /// Equivalence read back from the homotopy of an equivalence.
    HomotopyToGauge {
        #[command(flatten)]
        src: Source,
        #[command(flatten)]
        pick: Pick,
    },
    /// Obstruction class for the canonical extension one order up.
    Obstruct {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        witness: Option<String>,
    },
    /// Lift a witness one order up, or report the obstruction.
    Lift {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        witness: Option<String>,
    },
    /// Run every acceptance check.
    Suite {
        #[arg(long, default_value = "fixtures")]
        fixtures: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List catalog entries or emit them as fixtures.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    List,
    /// Print an entry in the `.dgp` format, or write all of them to `--out`.
    Emit {
        name: Option<String>,
        #[arg(long, default_value = "eps3")]
        ring: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

impl Outcome {
    fn new(command: &str, passed: bool, body: Map<String, Value>) -> Self {
        let mut report = Map::new();
        report.insert("command".into(), command.into());
        report.insert("status".into(), if passed { "pass" } else { "fail" }.into());
        report.extend(body);
        Outcome {
            code: if passed { 0 } else { 1 },
            report: Value::Object(report),
        }
    }

    pub fn input_error(message: &str) -> Self {
        Outcome {
            code: 2,
            report: json!({ "status": "input-error", "error": message }),
        }
    }
}

type Res = Result<Outcome, String>;

// ---- loading ----

pub fn read_document(path: &Path) -> Result<DiagramDocument, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    format::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn catalog_document(name: &str) -> Result<DiagramDocument, String> {
    let e = catalog::entry::<Q>(name).map_err(|e| e.to_string())?;
    let mut doc = DiagramDocument::from_pair(e.name, e.summary, &e.diagram);
    doc.properties = Some(e.properties);
    Ok(doc)
}

fn load(src: &Source) -> Result<DiagramDocument, String> {
    match (&src.file, &src.catalog) {
        (Some(f), _) => read_document(f),
        (None, Some(c)) => catalog_document(c),
        (None, None) => Err("give a diagram file or --catalog <name>".into()),
    }
}

fn load_pair(src: &Source) -> Result<(DiagramDocument, PairDiagram<Q>, RingDecl), String> {
    let doc = load(src)?;
    let p = doc.pair()?;
    let ring = doc.ring_or_default();
    Ok((doc, p, ring))
}

fn witness<'a>(
    doc: &'a DiagramDocument,
    name: Option<&str>,
) -> Result<&'a PairMCWitness<Q>, String> {
    doc.witness(name).ok_or_else(|| match name {
        Some(n) => format!("no witness named `{n}`"),
        None => "document has no witness".into(),
    })
}

fn pick(
    doc: &DiagramDocument,
    p: &Pick,
) -> Result<(PairMCWitness<Q>, PairMCWitness<Q>, EquivWitness<Q>), String> {
    let w0 = witness(doc, p.from.as_deref())?.clone();
    let w1 = match &p.to {
        Some(n) => witness(doc, Some(n))?.clone(),
        None => doc
            .witnesses
            .get(1)
            .map(|(_, w)| w.clone())
            .ok_or("document needs a second witness or --to")?,
    };
    let ew = doc
        .equivalence(p.equivalence.as_deref())
        .ok_or("document has no such equivalence")?
        .clone();
    Ok((w0, w1, ew))
}

// ---- report helpers ----

fn q_str(q: &Q) -> String {
    format::rational(q)
}

fn show_witness(p: &PairDiagram<Q>, ring: &ArtinAlgebra<Q>, w: &PairMCWitness<Q>) -> Value {
    json!({
        "x": w.x.format(&p.l, ring),
        "y": w.y.format(&p.n, ring),
        "p": w.p.format(&p.m, ring),
    })
}

fn show_equivalence(p: &PairDiagram<Q>, ring: &ArtinAlgebra<Q>, w: &EquivWitness<Q>) -> Value {
    json!({
        "a": w.a.format(&p.l, ring),
        "b": w.b.format(&p.n, ring),
        "c": w.c.format(&p.m, ring),
    })
}

fn show_cone(p: &PairDiagram<Q>, ring: &ArtinAlgebra<Q>, c: &ConeElem<NilElement<Q>>) -> Value {
    json!({
        "l": c.l.format(&p.l, ring),
        "n": c.n.format(&p.n, ring),
        "m": c.m.format(&p.m, ring),
    })
}

fn show_path(
    dgla: &dgpair::Dgla,
    ring: &ArtinAlgebra<Q>,
    e: &PathElement<NilElement<Q>>,
) -> Vec<String> {
    let power = |i: u32| match i {
        0 => String::new(),
        1 => "s ".into(),
        _ => format!("s^{i} "),
    };
    let mut out: Vec<String> = e
        .poly
        .iter()
        .map(|(i, x)| format!("{}({})", power(*i), x.format(dgla, ring)))
        .collect();
    out.extend(
        e.dt.iter()
            .map(|(i, x)| format!("{}ds ({})", power(*i), x.format(dgla, ring))),
    );
    out
}

fn show_homotopy(
    p: &PairDiagram<Q>,
    ring: &ArtinAlgebra<Q>,
    h: &HomotopyPath<NilElement<Q>>,
) -> Value {
    json!({
        "l": show_path(&p.l, ring, &h.l),
        "n": show_path(&p.n, ring, &h.n),
        "m": show_path(&p.m, ring, &h.m),
    })
}

fn dims(v: &[(i32, usize)]) -> Value {
    Value::Array(
        v.iter()
            .map(|(d, k)| json!({ "degree": d, "dim": k }))
            .collect(),
    )
}

fn body(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

// ---- subcommands ----

fn validate(src: &Source) -> Res {
    let doc = load(src)?;
    let mut ok = true;
    let mut dglas = Vec::new();
    for d in &doc.dglas {
        let r = validate_dgla(&d.dgla);
        ok &= r.is_valid();
        dglas.push(json!({
            "name": d.name,
            "dim": d.dgla.dim(),
            "valid": r.is_valid(),
            "failures": r.failures.iter().map(|f| json!({
                "axiom": f.axiom.to_string(),
                "basis": f.basis,
                "residual": f.residual,
            })).collect::<Vec<_>>(),
        }));
    }
    let mut morphisms = Vec::new();
    for m in &doc.morphisms {
        let (s, t) = (doc.dgla(&m.source), doc.dgla(&m.target));
        let (Some(s), Some(t)) = (s, t) else { continue };
        let f =
            DglaMorphism::new(s.clone(), t.clone(), m.map.clone()).map_err(|e| e.to_string())?;
        let r = validate_morphism(&f);
        ok &= r.is_valid();
        morphisms.push(json!({
            "name": m.name,
            "valid": r.is_valid(),
            "failures": r.failures.iter().map(|f| json!({
                "axiom": f.axiom.to_string(),
                "basis": f.basis,
                "residual": f.residual,
            })).collect::<Vec<_>>(),
        }));
    }
    let mut out = body(vec![
        ("dglas", dglas.into()),
        ("morphisms", morphisms.into()),
    ]);
    if let (true, Some(pinned)) = (ok, &doc.properties) {
        let p = doc.pair()?;
        let got = compute_properties(&p);
        let same = got == *pinned;
        ok &= same;
        out.insert(
            "properties".into(),
            json!({
                "matches_pinned": same,
                "cone_cohomology": dims(&got.cone_cohomology),
                "h_injective": got.h_injective,
                "m_nonnegative": got.m_nonnegative,
            }),
        );
    }
    Ok(Outcome::new("validate", ok, out))
}

fn cohomology(src: &Source, degree: Option<i32>) -> Res {
    let (_, p, _) = load_pair(src)?;
    let cone = build_cone(&p).map_err(|e| e.to_string())?;
    let table = CohomologyTable::new(&cone.complex);
    let space = cone.space();
    let degrees: Vec<i32> = match degree {
        Some(d) => vec![d],
        None => cone.complex.degree_range().collect(),
    };
    let groups: Vec<Value> = degrees
        .iter()
        .map(|&d| {
            let reps: Vec<String> = table
                .group(d)
                .map(|g| {
                    g.representatives
                        .iter()
                        .map(|r| space.format_vector(r))
                        .collect()
                })
                .unwrap_or_default();
            json!({ "degree": d, "dim": table.dim(d), "representatives": reps })
        })
        .collect();
    Ok(Outcome::new(
        "cohomology",
        true,
        body(vec![("groups", groups.into())]),
    ))
}

fn cone_cmd(src: &Source) -> Res {
    let (_, p, _) = load_pair(src)?;
    let built = build_cone(&p);
    let d_squared_zero = built.is_ok();
    let Ok(cone) = built else {
        return Ok(Outcome::new(
            "cone",
            false,
            body(vec![("d_squared_zero", false.into())]),
        ));
    };
    let les = cone_les_check(&p);
    let table = CohomologyTable::new(&cone.complex);
    let (tangent, _) = tangent_space(&p);
    let basis: Vec<String> = cone
        .space()
        .basis()
        .iter()
        .map(|b| format!("{}:{}", b.name, b.degree))
        .collect();
    let m_summand: Vec<String> = shift(p.m.space(), -1)
        .basis()
        .iter()
        .map(|b| format!("{}:{}", b.name, b.degree))
        .collect();
    let nodes: Vec<Value> = les
        .nodes
        .iter()
        .map(|n| {
            json!({
                "space": n.label,
                "degree": n.degree,
                "dim": n.dimension,
                "rank_in": n.rank_in,
                "rank_out": n.rank_out,
                "composite_zero": n.composite_zero,
                "exact": n.exact,
            })
        })
        .collect();
    let ok = d_squared_zero && les.exact();
    Ok(Outcome::new(
        "cone",
        ok,
        body(vec![
            ("basis", basis.into()),
            ("m_summand", m_summand.into()),
            ("d_squared_zero", d_squared_zero.into()),
            ("cohomology", dims(&table.dims())),
            ("tangent_dim", tangent.into()),
            ("les_exact", les.exact().into()),
            ("les", nodes.into()),
        ]),
    ))
}

fn gamma(src: &Source) -> Res {
    let (_, p, _) = load_pair(src)?;
    if !p.h_injective() {
        return Err("gamma needs an injective h".into());
    }
    let r = gamma_map(&p).map_err(|e| e.to_string())?;
    let degrees: Vec<Value> = r
        .degrees
        .iter()
        .map(|(d, a, b, inv)| json!({ "degree": d, "cone_dim": a, "target_dim": b, "invertible": inv }))
        .collect();
    let ok = r.quasi_isomorphism();
    Ok(Outcome::new(
        "gamma",
        ok,
        body(vec![
            ("quasi_isomorphism", ok.into()),
            ("degrees", degrees.into()),
        ]),
    ))
}

/// Random cone vectors over the ground field, degrees drawn from the cone.
pub fn random_cone_inputs(
    t: &TransferredLinf<Q>,
    rng: &mut sample::SampleRng,
    arity: usize,
) -> (Vec<SparseVec<Q>>, Vec<i32>) {
    let degrees: Vec<i32> = t.cone.space().degrees().into_iter().collect();
    let mut vs = Vec::new();
    let mut ds = Vec::new();
    for _ in 0..arity {
        let d = *sample::pick(rng, &degrees);
        vs.push(sample::vector(rng, &t.cone.space().in_degree(d), 0.6));
        ds.push(d);
    }
    (vs, ds)
}

fn transfer(src: &Source, arity: usize, mode: Mode, samples: usize, seed: u64) -> Res {
    if arity == 0 {
        return Err("--arity must be at least 1".into());
    }
    let (_, p, _) = load_pair(src)?;
    let tree = TransferredLinf::new(&p, arity, TransferMode::Tree);
    let closed = TransferredLinf::new(&p, arity, TransferMode::Closed);
    let space = tree.cone.space();
    let mut rng = sample::rng(seed);
    let mut rows = Vec::new();
    let mut agree = 0;
    for _ in 0..samples {
        let (vs, ds) = random_cone_inputs(&tree, &mut rng, arity);
        let mut row = Map::new();
        row.insert(
            "inputs".into(),
            vs.iter()
                .zip(&ds)
                .map(|(v, d)| json!({ "degree": d, "vector": space.format_vector(v) }))
                .collect(),
        );
        let t = (mode != Mode::Closed).then(|| tree.bracket_vectors(&vs, &ds));
        let c = (mode != Mode::Tree).then(|| closed.bracket_vectors(&vs, &ds));
        if let Some(t) = &t {
            row.insert("tree".into(), space.format_vector(t).into());
        }
        if let Some(c) = &c {
            row.insert("closed".into(), space.format_vector(c).into());
        }
        if let (Some(t), Some(c)) = (&t, &c) {
            let same = t == c;
            agree += same as usize;
            row.insert("agree".into(), same.into());
        }
        rows.push(Value::Object(row));
    }
    let mut out = body(vec![
        ("arity", arity.into()),
        ("mode", format!("{mode:?}").to_lowercase().into()),
        ("seed", seed.into()),
        ("samples", rows.into()),
    ]);
    let ok = mode != Mode::Both || agree == samples;
    if mode == Mode::Both {
        out.insert(
            "tree_closed_agreement".into(),
            json!(format!("{agree}/{samples}")),
        );
    }
    Ok(Outcome::new("transfer", ok, out))
}

fn linf_cmd(src: &Source, arity: usize, weight: usize, mode: Mode) -> Res {
    let (doc, p, _) = load_pair(src)?;
    let mut ok = true;
    let mut dglas = Vec::new();
    for d in &doc.dglas {
        let r = validate_linf(&dgla_to_linf(&d.dgla), weight);
        ok &= r.passed();
        dglas.push(json!({ "name": d.name, "tuples": r.tuples_checked, "passed": r.passed() }));
    }
    let modes: &[(TransferMode, &str)] = match mode {
        Mode::Tree => &[(TransferMode::Tree, "tree")],
        Mode::Closed => &[(TransferMode::Closed, "closed")],
        Mode::Both => &[
            (TransferMode::Tree, "tree"),
            (TransferMode::Closed, "closed"),
        ],
    };
    let mut cone = Vec::new();
    for (m, label) in modes {
        let t = TransferredLinf::new(&p, arity, *m);
        let r = validate_linf(&t, weight);
        ok &= r.passed();
        let failures: Vec<Value> = r
            .failures
            .iter()
            .take(5)
            .map(|f| json!({ "weight": f.weight, "basis": f.basis, "residual": f.residual }))
            .collect();
        cone.push(json!({
            "mode": label,
            "tuples": r.tuples_checked,
            "passed": r.passed(),
            "failures": failures,
        }));
    }
    Ok(Outcome::new(
        "linf",
        ok,
        body(vec![
            ("arity_cap", arity.into()),
            ("weight", weight.into()),
            ("dglas", dglas.into()),
            ("cone", cone.into()),
        ]),
    ))
}

fn contraction(src: &Source, samples: usize, max_t: u32, seed: u64) -> Res {
    let (_, p, ring) = load_pair(src)?;
    let r = &ring.algebra;
    let pair = TensorPair::new(&p, r);
    let h = HDgla::new(&pair);
    let mut rng = sample::rng(seed);
    let cones: Vec<_> = (0..samples)
        .map(|i| cone_element(&mut rng, &p, r, (i % 3) as i32, 0.3))
        .collect();
    let paths: Vec<_> = (0..samples)
        .map(|i| member(&mut rng, &h, &p, r, (i % 3) as i32, max_t, 0.3))
        .collect();
    let report = contraction_check(&h, &cones, &paths);
    let k = KDgla { h: &h };
    let mut embed_failures = 0;
    for w in paths.windows(2) {
        let ok = match (barycentric_embed(&h, &w[0]), barycentric_embed(&h, &w[1])) {
            (Ok(a), Ok(b)) => {
                let br = barycentric_embed(&h, &h.bracket(&w[0], &w[1]));
                k.is_member(&a) && matches!(br, Ok(c) if c.sub(&k.bracket(&a, &b)).is_zero())
            }
            _ => false,
        };
        embed_failures += (!ok) as usize;
    }
    let ok = report.passed() && embed_failures == 0;
    Ok(Outcome::new(
        "contraction",
        ok,
        body(vec![
            ("samples", report.samples.into()),
            ("max_t_degree", max_t.into()),
            ("pi_iota_failures", report.pi_iota_failures.into()),
            ("homotopy_failures", report.homotopy_failures.into()),
            ("side_condition_pairs", report.side_condition_pairs.into()),
            (
                "side_condition_failures",
                report.side_condition_failures.into(),
            ),
            ("barycentric_failures", embed_failures.into()),
        ]),
    ))
}

fn bernoulli_cmd(max: usize) -> Res {
    let rows: Vec<Value> = (0..=max)
        .map(|j| {
            let mut row = json!({ "j": j, "B": q_str(&linf::bernoulli::<Q>(j)) });
            if j >= 1 {
                let (phi, i) = linf::phi_sequence::<Q>(j);
                let (phi_bar, i_bar) = linf::phi_bar_sequence::<Q>(j);
                row["phi"] = phi.iter().map(q_str).collect::<Vec<_>>().into();
                row["I"] = q_str(&i).into();
                row["phi_bar"] = phi_bar.iter().map(q_str).collect::<Vec<_>>().into();
                row["I_bar"] = q_str(&i_bar).into();
            }
            row
        })
        .collect();
    Ok(Outcome::new(
        "bernoulli",
        true,
        body(vec![("table", rows.into())]),
    ))
}

fn mc_verify(src: &Source, name: Option<&str>) -> Res {
    let (doc, p, ring) = load_pair(src)?;
    let w = witness(&doc, name)?;
    let r = &ring.algebra;
    let res = mc_pair_residuals(&p, r, w).map_err(|e| e.to_string())?;
    let failed: Vec<String> = mc_pair_failures(&p, r, w)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|e| e.to_string())
        .collect();
    let t = TensorPair::new(&p, r);
    let ok = failed.is_empty();
    Ok(Outcome::new(
        "mc-verify",
        ok,
        body(vec![
            ("witness", show_witness(&p, r, w)),
            ("x_is_mc", is_mc(&t.l, &w.x).into()),
            ("y_is_mc", is_mc(&t.n, &w.y).into()),
            (
                "residuals",
                json!({
                    "dx + 1/2[x,x]": res[0].format(&p.l, r),
                    "dy + 1/2[y,y]": res[1].format(&p.n, r),
                    "g(y) - e^p * h(x)": res[2].format(&p.m, r),
                }),
            ),
            ("failed_equations", failed.into()),
        ]),
    ))
}

fn equiv_verify(src: &Source, pk: &Pick) -> Res {
    let (doc, p, ring) = load_pair(src)?;
    let (w0, w1, ew) = pick(&doc, pk)?;
    let r = &ring.algebra;
    let ok = pair_equiv_verify(&p, r, &w0, &w1, &ew).map_err(|e| e.to_string())?;
    let moved = dgpair::cone::equivalence_action(&p, r, &w0, &ew).map_err(|e| e.to_string())?;
    Ok(Outcome::new(
        "equiv-verify",
        ok,
        body(vec![
            ("from", show_witness(&p, r, &w0)),
            ("to", show_witness(&p, r, &w1)),
            ("equivalence", show_equivalence(&p, r, &ew)),
            ("image", show_witness(&p, r, &moved)),
        ]),
    ))
}

fn mc_infinity(src: &Source, name: Option<&str>) -> Res {
    let (doc, p, ring) = load_pair(src)?;
    let w = witness(&doc, name)?;
    let r = &ring.algebra;
    let t = TensorPair::new(&p, r);
    let gamma = w.as_cone();
    let residual = mc_infinity_residual(&t, &gamma).map_err(|e| e.to_string())?;
    let ok = mc_infinity_verify(&t, &gamma).map_err(|e| e.to_string())?;
    let pair_ok = mc_pair_verify(&p, r, w);
    Ok(Outcome::new(
        "mc-infinity-verify",
        ok,
        body(vec![
            ("gamma", show_cone(&p, r, &gamma)),
            ("residual", show_cone(&p, r, &residual)),
            ("pair_equations_hold", pair_ok.into()),
            ("agrees_with_pair_equations", (ok == pair_ok).into()),
        ]),
    ))
}

fn g2h(src: &Source, pk: &Pick) -> Res {
    let (doc, p, ring) = load_pair(src)?;
    let (w0, w1, ew) = pick(&doc, pk)?;
    let r = &ring.algebra;
    let out = match gauge_to_homotopy(&p, r, &w0, &w1, &ew) {
        Ok(path) => Outcome::new(
            "gauge-to-homotopy",
            true,
            body(vec![
                ("homotopy", show_homotopy(&p, r, &path)),
                ("verified", true.into()),
            ]),
        ),
        Err(e) => Outcome::new(
            "gauge-to-homotopy",
            false,
            body(vec![("error", e.to_string().into())]),
        ),
    };
    Ok(out)
}

fn h2g(src: &Source, pk: &Pick) -> Res {
    let (doc, p, ring) = load_pair(src)?;
    let (w0, w1, ew) = pick(&doc, pk)?;
    let r = &ring.algebra;
    let path = match gauge_to_homotopy(&p, r, &w0, &w1, &ew) {
        Ok(path) => path,
        Err(e) => {
            return Ok(Outcome::new(
                "homotopy-to-gauge",
                false,
                body(vec![(
                    "error",
                    format!("building the homotopy: {e}").into(),
                )]),
            ))
        }
    };
    let out = match homotopy_to_gauge(&p, r, &path) {
        Ok(back) => Outcome::new(
            "homotopy-to-gauge",
            true,
            body(vec![
                ("homotopy", show_homotopy(&p, r, &path)),
                ("equivalence", show_equivalence(&p, r, &back)),
                ("verified", true.into()),
            ]),
        ),
        Err(e) => Outcome::new(
            "homotopy-to-gauge",
            false,
            body(vec![("error", e.to_string().into())]),
        ),
    };
    Ok(out)
}

/// `A' = A` with the truncation raised by one; `J` is spanned by the new
/// top-degree monomials. Returns the extension and `w` moved onto its
/// quotient basis by monomial label.
pub fn canonical_extension(
    ring: &RingDecl,
    w: &PairMCWitness<Q>,
) -> Result<(dgpair::artin::SmallExtension<Q>, PairMCWitness<Q>), String> {
    let total = RingDecl::new(ring.vars.clone(), ring.order + 1, ring.relations.clone())?;
    let mut gens = Vec::new();
    let mut exps = vec![0u32; ring.vars.len()];
    top_monomials(&mut exps, 0, ring.order as u32, &mut |e| {
        if let Ok(v) = total.algebra.monomial(e) {
            if !v.is_empty() {
                gens.push(v);
            }
        }
    });
    if gens.is_empty() {
        return Err("the ring has no room for a higher order".into());
    }
    let se = make_small_extension(&total.algebra, &gens).map_err(|e| e.to_string())?;
    let remap = |e: &NilElement<Q>| -> Result<NilElement<Q>, String> {
        let mut out = NilElement::zero(e.degree);
        for ((i, mu), c) in &e.terms {
            let label = ring.algebra.label(*mu);
            let k = se
                .quotient
                .index_of(label)
                .ok_or_else(|| format!("monomial `{label}` has no image in the extension"))?;
            out.terms.insert((*i, k), c.clone());
        }
        Ok(out)
    };
    let moved = PairMCWitness {
        x: remap(&w.x)?,
        y: remap(&w.y)?,
        p: remap(&w.p)?,
    };
    Ok((se, moved))
}

fn top_monomials(exps: &mut Vec<u32>, k: usize, left: u32, f: &mut impl FnMut(&[u32])) {
    if k + 1 == exps.len() {
        exps[k] = left;
        f(exps);
        return;
    }
    for a in 0..=left {
        exps[k] = a;
        top_monomials(exps, k + 1, left - a, f);
    }
}

fn obstruct(src: &Source, name: Option<&str>, lift: bool) -> Res {
    let (doc, p, ring) = load_pair(src)?;
    let w = witness(&doc, name)?;
    if !mc_pair_verify(&p, &ring.algebra, w) {
        return Err("witness is not Maurer-Cartan over the document ring".into());
    }
    let (se, w) = canonical_extension(&ring, w)?;
    let cone = build_cone(&p).map_err(|e| e.to_string())?;
    let command = if lift { "lift" } else { "obstruct" };
    let class = obstruction_class(&p, &se, &w, None).map_err(|e| e.to_string())?;
    let ideal: Vec<String> = se
        .ideal
        .iter()
        .map(|v| {
            dgpair::graded::format_terms(v.iter().map(|(i, c)| (se.total.label(*i).to_string(), c)))
        })
        .collect();
    let class_json = json!({
        "ideal": ideal,
        "cocycles": class.cocycles.iter().map(|v| cone.space().format_vector(v)).collect::<Vec<_>>(),
        "reduced": class.canonical.iter().map(|v| cone.space().format_vector(v)).collect::<Vec<_>>(),
        "h2_coordinates": class.classes.iter().map(|c| c.iter().map(q_str).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "vanishes": class.vanishes(),
    });
    if !lift {
        return Ok(Outcome::new(
            command,
            true,
            body(vec![("obstruction", class_json)]),
        ));
    }
    let out = match lift_mc(&p, &se, &w).map_err(|e| e.to_string())? {
        LiftOutcome::Lifted(l) => Outcome::new(
            command,
            true,
            body(vec![
                ("obstruction", class_json),
                ("lift", show_witness(&p, &se.total, &l)),
                ("lift_verified", mc_pair_verify(&p, &se.total, &l).into()),
            ]),
        ),
        LiftOutcome::Obstructed(_) => {
            Outcome::new(command, false, body(vec![("obstruction", class_json)]))
        }
    };
    Ok(out)
}

/// The `.dgp` text for a catalog entry with two equivalent witnesses.
pub fn emit_fixture(name: &str, ring_name: &str, seed: u64) -> Result<String, String> {
    let mut doc = catalog_document(name)?;
    let ring = named_ring(ring_name)?;
    let p = doc.pair()?;
    let r = &ring.algebra;
    // first seed at or after `seed` giving distinct nonzero witnesses
    let mut found = None;
    for s in seed..seed + 64 {
        let w0 = sample_mc(&p, r, s);
        let mut rng = sample::rng(s.wrapping_add(1));
        let ew = dgpair::cone::random_equivalence(&p, r, &mut rng);
        let w1 = dgpair::cone::equivalence_action(&p, r, &w0, &ew).map_err(|e| e.to_string())?;
        let trivial = w0.x.is_zero() || w0 == w1;
        if found.is_none() || !trivial {
            found = Some((w0, w1, ew));
        }
        if !trivial {
            break;
        }
    }
    let (w0, w1, ew) = found.expect("at least one seed");
    doc.ring = Some(ring);
    doc.witnesses = vec![("w0".into(), w0), ("w1".into(), w1)];
    doc.equivalences = vec![("e".into(), ew)];
    Ok(format::serialize(&doc))
}

pub fn named_ring(name: &str) -> Result<RingDecl, String> {
    let a = catalog::ring::<Q>(name).map_err(|_| format!("unknown ring `{name}`"))?;
    let pres = a.presentation().ok_or("ring has no presentation")?;
    RingDecl::new(
        pres.generators.clone(),
        pres.truncation_order,
        pres.relations.clone(),
    )
}

fn catalog_cmd(action: &CatalogAction) -> Res {
    match action {
        CatalogAction::List => {
            let entries: Vec<Value> = catalog::all_entries::<Q>()
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "summary": e.summary,
                        "cone_cohomology": dims(&e.properties.cone_cohomology),
                        "h_injective": e.properties.h_injective,
                        "m_nonnegative": e.properties.m_nonnegative,
                    })
                })
                .collect();
            Ok(Outcome::new(
                "catalog",
                true,
                body(vec![("entries", entries.into())]),
            ))
        }
        CatalogAction::Emit {
            name,
            ring,
            seed,
            out,
        } => match (name, out) {
            (Some(n), None) => {
                let text = emit_fixture(n, ring, *seed)?;
                Ok(Outcome {
                    code: 0,
                    report: Value::String(text),
                })
            }
            (names, Some(dir)) => {
                let list: Vec<String> = match names {
                    Some(n) => vec![n.clone()],
                    None => catalog::NAMES.iter().map(|s| s.to_string()).collect(),
                };
                std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
                let mut written = Vec::new();
                for n in &list {
                    let path = dir.join(format!("{n}.dgp"));
                    std::fs::write(&path, emit_fixture(n, ring, *seed)?)
                        .map_err(|e| e.to_string())?;
                    written.push(path.display().to_string());
                }
                Ok(Outcome::new(
                    "catalog",
                    true,
                    body(vec![("written", written.into())]),
                ))
            }
            (None, None) => Err("give an entry name or --out <dir>".into()),
        },
    }
}

fn suite(fixtures: &Path, seed: u64) -> Res {
    let results = acceptance::run_all(fixtures, seed);
    let ok = results.iter().all(|r| r.passed);
    let list: Vec<Value> = results.iter().map(|r| r.to_json()).collect();
    Ok(Outcome::new(
        "suite",
        ok,
        body(vec![
            ("passed", results.iter().filter(|r| r.passed).count().into()),
            ("total", results.len().into()),
            ("criteria", list.into()),
        ]),
    ))
}

pub fn run(cli: &Cli) -> Outcome {
    let res = match &cli.command {
        Command::Validate(s) => validate(s),
        Command::Cohomology { src, degree } => cohomology(src, *degree),
        Command::Cone(s) => cone_cmd(s),
        Command::Gamma(s) => gamma(s),
        Command::Transfer {
            src,
            arity,
            mode,
            samples,
            seed,
        } => transfer(src, *arity, *mode, *samples, *seed),
        Command::Linf {
            src,
            arity,
            weight,
            mode,
        } => linf_cmd(src, *arity, *weight, *mode),
        Command::Contraction {
            src,
            samples,
            max_t,
            seed,
        } => contraction(src, *samples, *max_t, *seed),
        Command::Bernoulli { max } => bernoulli_cmd(*max),
        Command::McVerify { src, witness } => mc_verify(src, witness.as_deref()),
        Command::EquivVerify { src, pick } => equiv_verify(src, pick),
        Command::McInfinityVerify { src, witness } => mc_infinity(src, witness.as_deref()),
        Command::GaugeToHomotopy { src, pick } => g2h(src, pick),
        Command::HomotopyToGauge { src, pick } => h2g(src, pick),
        Command::Obstruct { src, witness } => obstruct(src, witness.as_deref(), false),
        Command::Lift { src, witness } => obstruct(src, witness.as_deref(), true),
        Command::Suite { fixtures, seed } => suite(fixtures, *seed),
        Command::Catalog { action } => catalog_cmd(action),
    };
    res.unwrap_or_else(|e| Outcome::input_error(&e))
}

/// Library operations and the subcommands that reach them.
pub const COVERAGE: &[(&str, &[&str])] = &[
    ("koszul_sign", &["transfer", "linf"]),
    ("unshuffles", &["linf"]),
    ("shift", &["cone"]),
    ("cohomology", &["cohomology", "cone"]),
    ("product_dgla", &["cone"]),
    ("bch", &["equiv-verify", "gauge-to-homotopy"]),
    ("gauge_action", &["mc-verify", "equiv-verify"]),
    ("is_mc", &["mc-verify"]),
    ("stabilizer_element", &["homotopy-to-gauge"]),
    ("make_small_extension", &["obstruct", "lift"]),
    ("build_cone", &["cone", "cohomology"]),
    ("cone_les_check", &["cone"]),
    ("gamma_map", &["gamma"]),
    ("mc_pair_verify", &["mc-verify"]),
    ("pair_equiv_verify", &["equiv-verify"]),
    ("tangent_space", &["cone"]),
    ("obstruction_class", &["obstruct"]),
    ("lift_mc", &["lift"]),
    ("eval_at", &["gauge-to-homotopy", "homotopy-to-gauge"]),
    ("integrate", &["homotopy-to-gauge"]),
    ("path_dgla_ops", &["gauge-to-homotopy", "contraction"]),
    ("iota", &["contraction"]),
    ("pi", &["contraction"]),
    ("homotopy_K", &["contraction", "transfer"]),
    ("contraction_check", &["contraction"]),
    ("barycentric_embed", &["contraction"]),
    ("mc_path_from_gauge", &["gauge-to-homotopy"]),
    ("stabilizer_from_loop", &["homotopy-to-gauge"]),
    ("mc_path_decompose", &["homotopy-to-gauge"]),
    ("dgla_to_linf", &["linf"]),
    ("validate_linf", &["linf"]),
    ("bernoulli", &["bernoulli", "transfer"]),
    ("phi_sequence", &["bernoulli"]),
    ("transferred_bracket_tree", &["transfer"]),
    (
        "transferred_bracket_closed",
        &["transfer", "mc-infinity-verify"],
    ),
    ("mc_infinity_verify", &["mc-infinity-verify"]),
    ("gauge_to_homotopy", &["gauge-to-homotopy"]),
    ("homotopy_to_gauge", &["homotopy-to-gauge"]),
    ("random_mc", &["catalog"]),
];

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn coverage_names_real_subcommands() {
        let cmd = Cli::command();
        let names: Vec<&str> = cmd.get_subcommands().map(|c| c.get_name()).collect();
        for (op, subs) in COVERAGE {
            assert!(!subs.is_empty(), "{op}");
            for s in *subs {
                assert!(names.contains(s), "{op} -> {s}");
            }
        }
    }

    #[test]
    fn canonical_extension_of_dual_numbers() {
        let ring = RingDecl::dual_numbers();
        let (se, w) = canonical_extension(&ring, &PairMCWitness::zero()).unwrap();
        assert_eq!(se.total.dim(), 2);
        assert_eq!(se.quotient.labels(), ring.algebra.labels());
        assert_eq!(w, PairMCWitness::zero());
    }

    #[test]
    fn emitted_fixtures_parse() {
        for name in catalog::NAMES {
            let text = emit_fixture(name, "eps3", 0).unwrap();
            let doc = format::parse(&text).unwrap();
            assert_eq!(format::serialize(&doc), text);
            assert_eq!(doc.witnesses.len(), 2);
        }
    }
}
