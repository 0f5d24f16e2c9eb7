//! The `.dgp` text format: line-oriented sections describing DGLAs,
//! morphisms, a coefficient ring, witnesses and pinned properties.
//!
//! ```text
//! diagram gl2-wedge
//! summary: one line of prose
//!
//! dgla L
//! basis: a:0, b:1
//! d: a -> 2 b
//! bracket: [a,a] -> 1 b
//!
//! morphism h: L -> M
//! map: a -> 1 a
//!
//! ring: vars=eps; order=3
//!
//! witness w0
//! x: b*eps -> 1
//!
//! equivalence e
//! a: a*eps^2 -> -1/2
//!
//! properties
//! cohomology: 1:1, 2:1
//! h_injective: true
//! m_nonnegative: true
//! ```
//!
//! Witness keys `x`, `y`, `p` live in `L¹`, `N¹`, `M⁰`; equivalence keys
//! `a`, `b`, `c` in `L⁰`, `N⁰`, `M⁻¹`. The pair is read from the morphisms
//! named `h` and `g`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use dgpair::artin::{make_artin, monomial_label, ArtinAlgebra, NilElement, Polynomial};
use dgpair::catalog::Properties;
use dgpair::cone::{EquivWitness, PairDiagram, PairMCWitness};
use dgpair::dgla::DglaPresentation;
use dgpair::graded::{format_terms, GradedMap, GradedSpace};
use dgpair::sparse::{add_term, SparseVec};
use dgpair::Q;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.col, self.message
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
pub struct DglaDecl {
    pub name: String,
    pub dgla: DglaPresentation<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MorphismDecl {
    pub name: String,
    pub source: String,
    pub target: String,
    pub map: GradedMap<Q>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RingDecl {
    pub vars: Vec<String>,
    pub order: usize,
    pub relations: Vec<Polynomial<Q>>,
    pub algebra: ArtinAlgebra<Q>,
}

impl RingDecl {
    pub fn new(
        vars: Vec<String>,
        order: usize,
        relations: Vec<Polynomial<Q>>,
    ) -> Result<Self, String> {
        let names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let algebra = make_artin(&names, order, &relations).map_err(|e| e.to_string())?;
        Ok(RingDecl {
            vars,
            order,
            relations,
            algebra,
        })
    }

    /// `Q[ε]/(ε²)`, used when a document names no ring.
    pub fn dual_numbers() -> Self {
        Self::new(vec!["eps".into()], 2, vec![]).expect("valid ring")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramDocument {
    pub name: Option<String>,
    pub summary: Option<String>,
    pub dglas: Vec<DglaDecl>,
    pub morphisms: Vec<MorphismDecl>,
    pub ring: Option<RingDecl>,
    pub witnesses: Vec<(String, PairMCWitness<Q>)>,
    pub equivalences: Vec<(String, EquivWitness<Q>)>,
    pub properties: Option<Properties>,
}

impl DiagramDocument {
    pub fn empty() -> Self {
        DiagramDocument {
            name: None,
            summary: None,
            dglas: vec![],
            morphisms: vec![],
            ring: None,
            witnesses: vec![],
            equivalences: vec![],
            properties: None,
        }
    }

    pub fn dgla(&self, name: &str) -> Option<&DglaPresentation<Q>> {
        self.dglas.iter().find(|d| d.name == name).map(|d| &d.dgla)
    }

    pub fn morphism(&self, name: &str) -> Option<&MorphismDecl> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    /// `(L, N, M)` names from the morphisms `h: L -> M` and `g: N -> M`.
    fn pair_names(&self) -> Option<(String, String, String)> {
        let h = self.morphism("h")?;
        let g = self.morphism("g")?;
        (h.target == g.target).then(|| (h.source.clone(), g.source.clone(), h.target.clone()))
    }

    pub fn pair(&self) -> Result<PairDiagram<Q>, String> {
        let (l, n, m) = self
            .pair_names()
            .ok_or("document needs morphisms h: L -> M and g: N -> M")?;
        let get = |k: &str| self.dgla(k).cloned().ok_or(format!("unknown dgla `{k}`"));
        let h = self.morphism("h").expect("checked").map.clone();
        let g = self.morphism("g").expect("checked").map.clone();
        PairDiagram::new(get(&l)?, get(&n)?, get(&m)?, h, g).map_err(|e| e.to_string())
    }

    pub fn ring_or_default(&self) -> RingDecl {
        self.ring.clone().unwrap_or_else(RingDecl::dual_numbers)
    }

    pub fn witness(&self, name: Option<&str>) -> Option<&PairMCWitness<Q>> {
        match name {
            Some(n) => self.witnesses.iter().find(|(k, _)| k == n).map(|(_, w)| w),
            None => self.witnesses.first().map(|(_, w)| w),
        }
    }

    pub fn equivalence(&self, name: Option<&str>) -> Option<&EquivWitness<Q>> {
        match name {
            Some(n) => self
                .equivalences
                .iter()
                .find(|(k, _)| k == n)
                .map(|(_, w)| w),
            None => self.equivalences.first().map(|(_, w)| w),
        }
    }

    /// A document for a pair with the conventional names `L`, `N`, `M`.
    pub fn from_pair(name: &str, summary: &str, p: &PairDiagram<Q>) -> Self {
        let mut doc = DiagramDocument::empty();
        doc.name = Some(name.into());
        doc.summary = (!summary.is_empty()).then(|| summary.into());
        for (k, d) in [("L", &p.l), ("N", &p.n), ("M", &p.m)] {
            doc.dglas.push(DglaDecl {
                name: k.into(),
                dgla: d.clone(),
            });
        }
        doc.morphisms.push(MorphismDecl {
            name: "h".into(),
            source: "L".into(),
            target: "M".into(),
            map: p.h.clone(),
        });
        doc.morphisms.push(MorphismDecl {
            name: "g".into(),
            source: "N".into(),
            target: "M".into(),
            map: p.g.clone(),
        });
        doc
    }
}

// ---- lexical helpers ----

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\''))
}

fn parse_rational(s: &str) -> Option<Q> {
    let t = s.trim();
    if t.is_empty()
        || !t
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '/' | '-' | '+'))
    {
        return None;
    }
    let r = Q::from_str(t.strip_prefix('+').unwrap_or(t)).ok()?;
    Some(r)
}

/// `c1 sym1 + c2 sym2 - ...`; a missing coefficient means 1, `0` alone is
/// the empty sum. Offsets in errors are relative to `text`.
fn parse_combination(text: &str) -> Result<Vec<(Q, String)>, (usize, String)> {
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    let skip = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_whitespace() {
            *i += 1;
        }
    };
    skip(&mut i);
    if text.trim() == "0" {
        return Ok(out);
    }
    if i == bytes.len() {
        return Err((i, "expected a linear combination".into()));
    }
    let mut first = true;
    while i < bytes.len() {
        let start = i;
        let mut negative = false;
        let mut saw_sign = false;
        while i < bytes.len() && matches!(bytes[i], '+' | '-') {
            if bytes[i] == '-' {
                negative = !negative;
            }
            saw_sign = true;
            i += 1;
            skip(&mut i);
        }
        if !first && !saw_sign {
            return Err((i, "expected `+` or `-` between terms".into()));
        }
        let num_start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == '/') {
            i += 1;
        }
        let mut coeff = if i > num_start {
            let tok: String = bytes[num_start..i].iter().collect();
            parse_rational(&tok).ok_or((num_start, format!("bad rational `{tok}`")))?
        } else {
            Q::one()
        };
        skip(&mut i);
        let sym_start = i;
        while i < bytes.len() && !bytes[i].is_whitespace() && !matches!(bytes[i], '+' | '-') {
            i += 1;
        }
        if i == sym_start {
            return Err((start, "term without a basis element".into()));
        }
        let sym: String = bytes[sym_start..i].iter().collect();
        if negative {
            coeff = -coeff;
        }
        out.push((coeff, sym));
        first = false;
        skip(&mut i);
    }
    Ok(out)
}

/// `eps^2*s` into exponents over `vars`.
fn parse_monomial(vars: &[String], s: &str) -> Option<Vec<u32>> {
    let mut exps = vec![0u32; vars.len()];
    for factor in s.split('*') {
        let (v, e) = match factor.split_once('^') {
            Some((v, e)) => (v, e.parse::<u32>().ok()?),
            None => (factor, 1),
        };
        let k = vars.iter().position(|x| x == v)?;
        exps[k] += e;
    }
    Some(exps)
}

fn format_polynomial(vars: &[String], p: &Polynomial<Q>) -> String {
    format_terms(p.iter().map(|(e, c)| (monomial_label(vars, e), c)))
}

// ---- raw sections ----

#[derive(Debug)]
struct Entry {
    line: usize,
    key: String,
    key_col: usize,
    value: String,
    value_col: usize,
}

#[derive(Debug)]
struct Section {
    kind: String,
    arg: String,
    line: usize,
    entries: Vec<Entry>,
}

const SECTION_KINDS: [&str; 6] = [
    "diagram",
    "dgla",
    "morphism",
    "witness",
    "equivalence",
    "properties",
];

fn split_sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let body = content.trim();
        let first = body.split_whitespace().next().unwrap_or("");
        if SECTION_KINDS.contains(&first) && !body.starts_with(&format!("{first}:")) {
            let arg = body[first.len()..].trim().to_string();
            sections.push(Section {
                kind: first.into(),
                arg,
                line,
                entries: vec![],
            });
            continue;
        }
        let Some((key, value)) = body.split_once(':') else {
            return Err(err(
                line,
                indent + 1,
                format!("expected `key: value` or a section header, found `{body}`"),
            ));
        };
        let key_t = key.trim();
        let value_col = indent + key.len() + 2 + (value.len() - value.trim_start().len());
        let entry = Entry {
            line,
            key: key_t.to_string(),
            key_col: indent + 1,
            value: value.trim().to_string(),
            value_col,
        };
        if key_t == "ring" {
            sections.push(Section {
                kind: "ring".into(),
                arg: String::new(),
                line,
                entries: vec![entry],
            });
            continue;
        }
        match sections.last_mut() {
            Some(s) if s.kind != "ring" => s.entries.push(entry),
            _ => {
                return Err(err(
                    line,
                    indent + 1,
                    format!("`{key_t}` outside of any section"),
                ))
            }
        }
    }
    Ok(sections)
}

// ---- section parsers ----

fn parse_dgla(sec: &Section) -> Result<DglaDecl, ParseError> {
    let name = sec.arg.clone();
    if !is_name(&name) {
        return Err(err(sec.line, 6, format!("bad dgla name `{name}`")));
    }
    let mut entries = sec.entries.iter();
    let basis_entry = entries.next().filter(|e| e.key == "basis").ok_or_else(|| {
        err(
            sec.line,
            1,
            format!("dgla `{name}` must start with a `basis:` line"),
        )
    })?;
    let mut basis = Vec::new();
    if !basis_entry.value.is_empty() {
        let mut offset = 0;
        for item in basis_entry.value.split(',') {
            let col = basis_entry.value_col + offset + (item.len() - item.trim_start().len());
            offset += item.len() + 1;
            let (n, d) = item.trim().split_once(':').ok_or_else(|| {
                err(
                    basis_entry.line,
                    col,
                    format!("expected `name:degree`, found `{}`", item.trim()),
                )
            })?;
            let (n, d) = (n.trim(), d.trim());
            if !is_name(n) {
                return Err(err(basis_entry.line, col, format!("bad basis name `{n}`")));
            }
            let deg = d
                .parse::<i32>()
                .map_err(|_| err(basis_entry.line, col, format!("bad degree `{d}`")))?;
            basis.push((n.to_string(), deg));
        }
    }
    let space = GradedSpace::new(basis)
        .map_err(|e| err(basis_entry.line, basis_entry.value_col, e.to_string()))?;
    let mut d = GradedMap::zero(&space, &space, 1);
    let mut d_seen = BTreeMap::new();
    let mut brackets: BTreeMap<(usize, usize), SparseVec<Q>> = BTreeMap::new();
    let lookup = |e: &Entry, col: usize, n: &str| {
        space.index_of(n).ok_or_else(|| {
            err(
                e.line,
                col,
                format!("unknown basis element `{n}` in dgla `{name}`"),
            )
        })
    };
    let combination = |e: &Entry, text: &str, col: usize| -> Result<SparseVec<Q>, ParseError> {
        let terms = parse_combination(text).map_err(|(o, m)| err(e.line, col + o, m))?;
        let mut v = SparseVec::new();
        for (c, s) in terms {
            let k = lookup(e, col, &s)?;
            add_term(&mut v, k, c);
        }
        Ok(v)
    };
    for e in entries {
        if e.key != "d" && e.key != "bracket" {
            return Err(err(
                e.line,
                e.key_col,
                format!("unknown key `{}` in dgla section", e.key),
            ));
        }
        let (lhs, rhs) = e
            .value
            .split_once("->")
            .ok_or_else(|| err(e.line, e.value_col, "expected `->`"))?;
        let rhs_col = e.value_col + lhs.len() + 2 + (rhs.len() - rhs.trim_start().len());
        match e.key.as_str() {
            "d" => {
                let s = lookup(e, e.value_col, lhs.trim())?;
                if d_seen.insert(s, e.line).is_some() {
                    return Err(err(
                        e.line,
                        e.value_col,
                        format!("second `d:` line for `{}`", lhs.trim()),
                    ));
                }
                for (t, c) in combination(e, rhs.trim(), rhs_col)? {
                    if space.degree(t) != space.degree(s) + 1 {
                        return Err(err(
                            e.line,
                            rhs_col,
                            format!(
                                "d({}) has a term `{}` of degree {}, expected {}",
                                space.name(s),
                                space.name(t),
                                space.degree(t),
                                space.degree(s) + 1
                            ),
                        ));
                    }
                    d.add_entry(t, s, c)
                        .map_err(|x| err(e.line, rhs_col, x.to_string()))?;
                }
            }
            "bracket" => {
                let inner = lhs
                    .trim()
                    .strip_prefix('[')
                    .and_then(|x| x.strip_suffix(']'))
                    .ok_or_else(|| err(e.line, e.value_col, "expected `[x,y]`"))?;
                let (a, b) = inner
                    .split_once(',')
                    .ok_or_else(|| err(e.line, e.value_col, "expected `[x,y]`"))?;
                let (i, j) = (
                    lookup(e, e.value_col, a.trim())?,
                    lookup(e, e.value_col, b.trim())?,
                );
                let v = combination(e, rhs.trim(), rhs_col)?;
                let want = space.degree(i) + space.degree(j);
                if let Some((k, _)) = v.iter().find(|(k, _)| space.degree(**k) != want) {
                    return Err(err(
                        e.line,
                        rhs_col,
                        format!(
                            "bracket [{},{}] has a term `{}` of degree {}, expected {}",
                            space.name(i),
                            space.name(j),
                            space.name(*k),
                            space.degree(*k),
                            want
                        ),
                    ));
                }
                let key = (i.min(j), i.max(j));
                if brackets.contains_key(&key) {
                    return Err(err(
                        e.line,
                        e.value_col,
                        format!("bracket [{},{}] given twice", a.trim(), b.trim()),
                    ));
                }
                // store as [e_i, e_j] with i <= j
                let v = if i <= j {
                    v
                } else {
                    let s = if (space.degree(i) * space.degree(j)) % 2 == 0 {
                        -Q::one()
                    } else {
                        Q::one()
                    };
                    v.into_iter().map(|(k, c)| (k, c * s.clone())).collect()
                };
                brackets.insert(key, v);
            }
            other => {
                return Err(err(
                    e.line,
                    e.key_col,
                    format!("unknown key `{other}` in dgla section"),
                ))
            }
        }
    }
    let dgla =
        DglaPresentation::new(space, d, brackets).map_err(|e| err(sec.line, 1, e.to_string()))?;
    Ok(DglaDecl { name, dgla })
}

fn parse_morphism(sec: &Section, dglas: &[DglaDecl]) -> Result<MorphismDecl, ParseError> {
    let bad = || {
        err(
            sec.line,
            10,
            format!(
                "expected `morphism <name>: <source> -> <target>`, found `{}`",
                sec.arg
            ),
        )
    };
    let (name, rest) = sec.arg.split_once(':').ok_or_else(bad)?;
    let (src, tgt) = rest.split_once("->").ok_or_else(bad)?;
    let (name, src, tgt) = (name.trim(), src.trim(), tgt.trim());
    if !is_name(name) {
        return Err(bad());
    }
    let find = |n: &str| {
        dglas
            .iter()
            .find(|d| d.name == n)
            .map(|d| &d.dgla)
            .ok_or_else(|| err(sec.line, 10, format!("unknown dgla `{n}`")))
    };
    let (s, t) = (find(src)?, find(tgt)?);
    let mut map = GradedMap::zero(s.space(), t.space(), 0);
    let mut seen = BTreeMap::new();
    for e in &sec.entries {
        if e.key != "map" {
            return Err(err(
                e.line,
                e.key_col,
                format!("unknown key `{}` in morphism section", e.key),
            ));
        }
        let (lhs, rhs) = e
            .value
            .split_once("->")
            .ok_or_else(|| err(e.line, e.value_col, "expected `->`"))?;
        let rhs_col = e.value_col + lhs.len() + 2 + (rhs.len() - rhs.trim_start().len());
        let i = s.space().index_of(lhs.trim()).ok_or_else(|| {
            err(
                e.line,
                e.value_col,
                format!("unknown basis element `{}` in `{src}`", lhs.trim()),
            )
        })?;
        if seen.insert(i, e.line).is_some() {
            return Err(err(
                e.line,
                e.value_col,
                format!("second `map:` line for `{}`", lhs.trim()),
            ));
        }
        let terms = parse_combination(rhs.trim()).map_err(|(o, m)| err(e.line, rhs_col + o, m))?;
        for (c, sym) in terms {
            let k = t.space().index_of(&sym).ok_or_else(|| {
                err(
                    e.line,
                    rhs_col,
                    format!("unknown basis element `{sym}` in `{tgt}`"),
                )
            })?;
            if t.degree(k) != s.degree(i) {
                return Err(err(
                    e.line,
                    rhs_col,
                    format!(
                        "{name}({}) has a term `{sym}` of the wrong degree",
                        lhs.trim()
                    ),
                ));
            }
            map.add_entry(k, i, c)
                .map_err(|x| err(e.line, rhs_col, x.to_string()))?;
        }
    }
    Ok(MorphismDecl {
        name: name.into(),
        source: src.into(),
        target: tgt.into(),
        map,
    })
}

fn parse_ring(e: &Entry) -> Result<RingDecl, ParseError> {
    let (mut vars, mut order, mut relations_text) = (None, None, None);
    let mut offset = 0;
    for part in e.value.split(';') {
        let col = e.value_col + offset + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        let (k, v) = part
            .trim()
            .split_once('=')
            .ok_or_else(|| err(e.line, col, "expected `key=value`"))?;
        match k.trim() {
            "vars" => {
                let vs: Vec<String> = v.split(',').map(|x| x.trim().to_string()).collect();
                if vs.iter().any(|x| !is_name(x)) {
                    return Err(err(e.line, col, "bad variable list"));
                }
                vars = Some(vs);
            }
            "order" => {
                order = Some(
                    v.trim()
                        .parse::<usize>()
                        .map_err(|_| err(e.line, col, "bad order"))?,
                )
            }
            "relations" => relations_text = Some((v.to_string(), col + k.len() + 1)),
            other => return Err(err(e.line, col, format!("unknown ring key `{other}`"))),
        }
    }
    let vars = vars.ok_or_else(|| err(e.line, e.value_col, "ring needs `vars=`"))?;
    let order = order.ok_or_else(|| err(e.line, e.value_col, "ring needs `order=`"))?;
    let mut relations = Vec::new();
    if let Some((text, col)) = relations_text {
        for rel in text.split(',') {
            let terms = parse_combination(rel.trim()).map_err(|(o, m)| err(e.line, col + o, m))?;
            let mut poly: Polynomial<Q> = Vec::new();
            for (c, m) in terms {
                let exps = parse_monomial(&vars, &m)
                    .ok_or_else(|| err(e.line, col, format!("bad monomial `{m}`")))?;
                poly.push((exps, c));
            }
            relations.push(poly);
        }
    }
    RingDecl::new(vars, order, relations).map_err(|m| err(e.line, e.value_col, m))
}

fn parse_element(
    e: &Entry,
    dgla: &DglaPresentation<Q>,
    ring: &RingDecl,
    degree: i32,
    acc: &mut NilElement<Q>,
) -> Result<(), ParseError> {
    let (lhs, rhs) = e
        .value
        .split_once("->")
        .ok_or_else(|| err(e.line, e.value_col, "expected `->`"))?;
    let rhs_col = e.value_col + lhs.len() + 2 + (rhs.len() - rhs.trim_start().len());
    let (b, m) = lhs
        .trim()
        .split_once('*')
        .ok_or_else(|| err(e.line, e.value_col, "expected `basis*monomial`"))?;
    let i = dgla
        .space()
        .index_of(b)
        .ok_or_else(|| err(e.line, e.value_col, format!("unknown basis element `{b}`")))?;
    if dgla.degree(i) != degree {
        return Err(err(
            e.line,
            e.value_col,
            format!(
                "`{b}` has degree {}, but `{}` needs degree {degree}",
                dgla.degree(i),
                e.key
            ),
        ));
    }
    let exps = parse_monomial(&ring.vars, m)
        .ok_or_else(|| err(e.line, e.value_col, format!("bad monomial `{m}`")))?;
    let nf = ring
        .algebra
        .monomial(&exps)
        .map_err(|x| err(e.line, e.value_col, x.to_string()))?;
    let c = parse_rational(rhs)
        .ok_or_else(|| err(e.line, rhs_col, format!("bad rational `{}`", rhs.trim())))?;
    for (mu, x) in nf {
        add_term(&mut acc.terms, (i, mu), c.clone() * x);
    }
    Ok(())
}

fn parse_properties(sec: &Section) -> Result<Properties, ParseError> {
    let (mut coh, mut inj, mut nonneg) = (None, None, None);
    let boolean = |e: &Entry| match e.value.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(err(e.line, e.value_col, "expected `true` or `false`")),
    };
    for e in &sec.entries {
        match e.key.as_str() {
            "cohomology" => {
                let mut v = Vec::new();
                if e.value != "none" {
                    for item in e.value.split(',') {
                        let (d, k) = item
                            .trim()
                            .split_once(':')
                            .ok_or_else(|| err(e.line, e.value_col, "expected `degree:dim`"))?;
                        let d = d
                            .trim()
                            .parse::<i32>()
                            .map_err(|_| err(e.line, e.value_col, "bad degree"))?;
                        let k = k
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| err(e.line, e.value_col, "bad dimension"))?;
                        v.push((d, k));
                    }
                }
                coh = Some(v);
            }
            "h_injective" => inj = Some(boolean(e)?),
            "m_nonnegative" => nonneg = Some(boolean(e)?),
            other => {
                return Err(err(
                    e.line,
                    e.key_col,
                    format!("unknown key `{other}` in properties section"),
                ))
            }
        }
    }
    let missing = |k: &str| err(sec.line, 1, format!("properties section lacks `{k}`"));
    Ok(Properties {
        cone_cohomology: coh.ok_or_else(|| missing("cohomology"))?,
        h_injective: inj.ok_or_else(|| missing("h_injective"))?,
        m_nonnegative: nonneg.ok_or_else(|| missing("m_nonnegative"))?,
    })
}

pub fn parse(text: &str) -> Result<DiagramDocument, ParseError> {
    let sections = split_sections(text)?;
    let mut doc = DiagramDocument::empty();
    // definitions first, so witness sections may appear anywhere
    for sec in &sections {
        match sec.kind.as_str() {
            "diagram" => {
                if doc.name.is_some() {
                    return Err(err(sec.line, 1, "second `diagram` header"));
                }
                doc.name = Some(sec.arg.clone());
                for e in &sec.entries {
                    match e.key.as_str() {
                        "summary" if doc.summary.is_none() => doc.summary = Some(e.value.clone()),
                        "summary" => return Err(err(e.line, e.key_col, "second `summary:` line")),
                        other => {
                            return Err(err(
                                e.line,
                                e.key_col,
                                format!("unknown key `{other}` in diagram section"),
                            ))
                        }
                    }
                }
            }
            "dgla" => {
                let d = parse_dgla(sec)?;
                if doc.dgla(&d.name).is_some() {
                    return Err(err(sec.line, 6, format!("dgla `{}` defined twice", d.name)));
                }
                doc.dglas.push(d);
            }
            "ring" => {
                if doc.ring.is_some() {
                    return Err(err(sec.line, 1, "second `ring:` line"));
                }
                doc.ring = Some(parse_ring(&sec.entries[0])?);
            }
            "properties" => {
                if doc.properties.is_some() {
                    return Err(err(sec.line, 1, "second properties section"));
                }
                doc.properties = Some(parse_properties(sec)?);
            }
            _ => {}
        }
    }
    for sec in sections.iter().filter(|s| s.kind == "morphism") {
        let m = parse_morphism(sec, &doc.dglas)?;
        if doc.morphism(&m.name).is_some() {
            return Err(err(
                sec.line,
                10,
                format!("morphism `{}` defined twice", m.name),
            ));
        }
        doc.morphisms.push(m);
    }
    for sec in sections
        .iter()
        .filter(|s| s.kind == "witness" || s.kind == "equivalence")
    {
        let name = sec.arg.clone();
        if !is_name(&name) {
            return Err(err(
                sec.line,
                sec.kind.len() + 2,
                format!("bad {} name `{name}`", sec.kind),
            ));
        }
        let taken = doc.witnesses.iter().any(|(k, _)| *k == name)
            || doc.equivalences.iter().any(|(k, _)| *k == name);
        if taken {
            return Err(err(
                sec.line,
                sec.kind.len() + 2,
                format!("`{name}` defined twice"),
            ));
        }
        let (l, n, m) = doc.pair_names().ok_or_else(|| {
            err(
                sec.line,
                1,
                "witnesses need morphisms `h: L -> M` and `g: N -> M`",
            )
        })?;
        let ring = doc.ring_or_default();
        let by = |k: &str| doc.dgla(k).expect("morphism endpoints resolved").clone();
        let (ld, nd, md) = (by(&l), by(&n), by(&m));
        let equiv = sec.kind == "equivalence";
        let keys: [(&str, &DglaPresentation<Q>, i32); 3] = if equiv {
            [("a", &ld, 0), ("b", &nd, 0), ("c", &md, -1)]
        } else {
            [("x", &ld, 1), ("y", &nd, 1), ("p", &md, 0)]
        };
        let mut parts: Vec<NilElement<Q>> =
            keys.iter().map(|(_, _, d)| NilElement::zero(*d)).collect();
        for e in &sec.entries {
            let Some(slot) = keys.iter().position(|(k, _, _)| *k == e.key) else {
                return Err(err(
                    e.line,
                    e.key_col,
                    format!("unknown key `{}` in {} section", e.key, sec.kind),
                ));
            };
            parse_element(e, keys[slot].1, &ring, keys[slot].2, &mut parts[slot])?;
        }
        let [a, b, c]: [NilElement<Q>; 3] = parts.try_into().expect("three parts");
        if equiv {
            doc.equivalences.push((name, EquivWitness { a, b, c }));
        } else {
            doc.witnesses
                .push((name, PairMCWitness { x: a, y: b, p: c }));
        }
    }
    Ok(doc)
}

// ---- serialization ----

fn write_element(
    out: &mut String,
    key: &str,
    e: &NilElement<Q>,
    dgla: &DglaPresentation<Q>,
    ring: &ArtinAlgebra<Q>,
) {
    for ((i, mu), c) in &e.terms {
        out.push_str(&format!(
            "{key}: {}*{} -> {c}\n",
            dgla.space().name(*i),
            ring.label(*mu)
        ));
    }
}

/// Canonical text: sections in a fixed order, one blank line between them.
pub fn serialize(doc: &DiagramDocument) -> String {
    let mut blocks: Vec<String> = Vec::new();
    if let Some(name) = &doc.name {
        let mut b = format!("diagram {name}\n");
        if let Some(s) = &doc.summary {
            b.push_str(&format!("summary: {s}\n"));
        }
        blocks.push(b);
    }
    for d in &doc.dglas {
        let sp = d.dgla.space();
        let basis: Vec<String> = sp
            .basis()
            .iter()
            .map(|b| format!("{}:{}", b.name, b.degree))
            .collect();
        let mut b = format!("dgla {}\nbasis: {}\n", d.name, basis.join(", "));
        for s in 0..sp.dim() {
            let col = d.dgla.differential().column(s);
            if !col.is_empty() {
                b.push_str(&format!("d: {} -> {}\n", sp.name(s), sp.format_vector(col)));
            }
        }
        for ((i, j), v) in d.dgla.brackets() {
            b.push_str(&format!(
                "bracket: [{},{}] -> {}\n",
                sp.name(*i),
                sp.name(*j),
                sp.format_vector(v)
            ));
        }
        blocks.push(b);
    }
    for m in &doc.morphisms {
        let mut b = format!("morphism {}: {} -> {}\n", m.name, m.source, m.target);
        let (src, tgt) = (m.map.source(), m.map.target());
        for s in 0..src.dim() {
            let col = m.map.column(s);
            if !col.is_empty() {
                b.push_str(&format!(
                    "map: {} -> {}\n",
                    src.name(s),
                    tgt.format_vector(col)
                ));
            }
        }
        blocks.push(b);
    }
    if let Some(r) = &doc.ring {
        let mut b = format!("ring: vars={}; order={}", r.vars.join(","), r.order);
        if !r.relations.is_empty() {
            let rels: Vec<String> = r
                .relations
                .iter()
                .map(|p| format_polynomial(&r.vars, p))
                .collect();
            b.push_str(&format!("; relations={}", rels.join(", ")));
        }
        b.push('\n');
        blocks.push(b);
    }
    if let Some((l, n, m)) = doc.pair_names() {
        let ring = doc.ring_or_default();
        let (ld, nd, md) = (doc.dgla(&l), doc.dgla(&n), doc.dgla(&m));
        if let (Some(ld), Some(nd), Some(md)) = (ld, nd, md) {
            for (name, w) in &doc.witnesses {
                let mut b = format!("witness {name}\n");
                write_element(&mut b, "x", &w.x, ld, &ring.algebra);
                write_element(&mut b, "y", &w.y, nd, &ring.algebra);
                write_element(&mut b, "p", &w.p, md, &ring.algebra);
                blocks.push(b);
            }
            for (name, w) in &doc.equivalences {
                let mut b = format!("equivalence {name}\n");
                write_element(&mut b, "a", &w.a, ld, &ring.algebra);
                write_element(&mut b, "b", &w.b, nd, &ring.algebra);
                write_element(&mut b, "c", &w.c, md, &ring.algebra);
                blocks.push(b);
            }
        }
    }
    if let Some(p) = &doc.properties {
        let coh = if p.cone_cohomology.is_empty() {
            "none".to_string()
        } else {
            p.cone_cohomology
                .iter()
                .map(|(d, k)| format!("{d}:{k}"))
                .collect::<Vec<_>>()
                .join(", ")
        };
        blocks.push(format!(
            "properties\ncohomology: {coh}\nh_injective: {}\nm_nonnegative: {}\n",
            p.h_injective, p.m_nonnegative
        ));
    }
    blocks.join("\n")
}

/// `Q` literal as written by [`serialize`].
pub fn rational(q: &Q) -> String {
    if q.is_zero() {
        "0".into()
    } else {
        q.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgpair::catalog::{entry, NAMES};

    const SMALL: &str = "\
diagram tiny
summary: a test   # trailing comment
dgla L
basis: x:1, y:2
bracket: [x,x] -> 1 y
morphism h: L -> L
map: x -> x
map: y -> y
morphism g: L -> L
map: x -> x
map: y -> y
ring: vars=eps; order=3
witness w
x: x*eps -> 1
y: x*eps -> 1
";

    #[test]
    fn parses_small_document() {
        let doc = parse(SMALL).unwrap();
        assert_eq!(doc.name.as_deref(), Some("tiny"));
        assert_eq!(doc.summary.as_deref(), Some("a test"));
        let p = doc.pair().unwrap();
        assert_eq!(p.l.dim(), 2);
        let w = doc.witness(None).unwrap();
        assert_eq!(w.x.terms.len(), 1);
        assert!(w.p.terms.is_empty());
    }

    #[test]
    fn round_trip_catalog() {
        for name in NAMES {
            let e = entry::<Q>(name).unwrap();
            let mut doc = DiagramDocument::from_pair(name, e.summary, &e.diagram);
            doc.properties = Some(e.properties.clone());
            doc.ring = Some(
                RingDecl::new(
                    vec!["s".into(), "t".into()],
                    3,
                    vec![vec![(vec![2, 0], Q::one())]],
                )
                .unwrap(),
            );
            let text = serialize(&doc);
            let back = parse(&text).unwrap();
            assert_eq!(back, doc, "{name}");
            assert_eq!(serialize(&back), text);
            assert_eq!(back.pair().unwrap(), e.diagram);
        }
    }

    #[test]
    fn bracket_degree_error_names_entry() {
        let text = "dgla L\nbasis: a:0, b:1\nbracket: [a,b] -> 1 a\n";
        let e = parse(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.message.contains("[a,b]"), "{e}");
    }

    #[test]
    fn unknown_keys_and_sections_are_rejected() {
        let e = parse("dgla L\nbasis: a:0\ncolor: red\n").unwrap_err();
        assert_eq!((e.line, e.col), (3, 1));
        let e = parse("stray: 1\n").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse("dgla L\nbasis: a:0\nd: a -> 2 q\n").unwrap_err();
        assert!(e.message.contains("unknown basis element `q`"));
    }

    #[test]
    fn combinations() {
        let c = parse_combination("3/2 e2 - e3 + -1 e4").unwrap();
        let want: Vec<(Q, String)> = vec![
            (Q::new(3.into(), 2.into()), "e2".into()),
            (-Q::one(), "e3".into()),
            (-Q::one(), "e4".into()),
        ];
        assert_eq!(c, want);
        assert!(parse_combination("2 a 3 b").is_err());
        assert!(parse_combination("0").unwrap().is_empty());
    }

    #[test]
    fn witness_degree_is_checked() {
        let text = SMALL.replace("x: x*eps -> 1", "x: y*eps -> 1");
        let e = parse(&text).unwrap_err();
        assert!(e.message.contains("degree"), "{e}");
    }
}
