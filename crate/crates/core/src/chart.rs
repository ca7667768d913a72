//! Charts: labeled, oriented graphs in the disk describing SL(2,Z)-valued
//! monodromy.
//!
//! The embedding is combinatorial. Each edge end occupies a numbered slot at
//! its vertex and slots are read counterclockwise, giving a rotation system.
//! Boundary vertices additionally sit on the boundary circle in
//! `boundary_order`, read counterclockwise from the base point.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::factorization::{canonical_form, Factorization, FactorizationError};
use crate::sl2z::{GeneratorWord, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChartError {
    #[error("invalid parameters p={p}, q={q}, k={k}")]
    InvalidParameters { p: i64, q: i64, k: i64 },
    #[error("chart is invalid: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("crossing sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("black count {c} differs from 12*{p_signed} + 6*{q} + {k}")]
    CountingIdentity {
        c: usize,
        p_signed: i64,
        q: u8,
        k: usize,
    },
    #[error(transparent)]
    Factorization(#[from] FactorizationError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Black,
    Boundary,
    Deg6,
    Deg12Negative,
    Deg12Positive,
}

impl VertexKind {
    pub fn expected_degree(self) -> usize {
        match self {
            VertexKind::Black | VertexKind::Boundary => 1,
            VertexKind::Deg6 => 6,
            VertexKind::Deg12Negative | VertexKind::Deg12Positive => 12,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VertexKind::Black => "black",
            VertexKind::Boundary => "boundary",
            VertexKind::Deg6 => "deg6",
            VertexKind::Deg12Negative => "deg12_negative",
            VertexKind::Deg12Positive => "deg12_positive",
        }
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VertexKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "black" => VertexKind::Black,
            "boundary" => VertexKind::Boundary,
            "deg6" => VertexKind::Deg6,
            "deg12_negative" => VertexKind::Deg12Negative,
            "deg12_positive" => VertexKind::Deg12Positive,
            other => return Err(format!("unknown vertex kind {other:?}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub kind: VertexKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeEnd {
    pub vertex: String,
    pub slot: usize,
}

/// An edge oriented from `from` to `to`, labeled 1 or 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub label: u8,
    pub from: EdgeEnd,
    pub to: EdgeEnd,
}

/// A closed edge without vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hoop {
    pub id: String,
    pub label: u8,
    pub parent: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chart {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub boundary_order: Vec<String>,
    pub hoops: Vec<Hoop>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Clause {
    /// Ids, labels, endpoints and slot numbering.
    Structure,
    /// (1) vertex degrees are 1, 6 or 12.
    Degree,
    /// (2) degree-six label and orientation pattern.
    Degree6,
    /// (3) degree-twelve label and orientation pattern.
    Degree12,
    /// (4) boundary vertices are exactly the degree-one vertices on the boundary.
    Boundary,
    /// (5) black vertices have an outward edge.
    BlackOutward,
    /// The rotation system embeds in the disk.
    Planarity,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Structure => "structure",
            Clause::Degree => "clause (1) degree",
            Clause::Degree6 => "clause (2) degree-six vertex",
            Clause::Degree12 => "clause (3) degree-twelve vertex",
            Clause::Boundary => "clause (4) boundary",
            Clause::BlackOutward => "clause (5) black vertex orientation",
            Clause::Planarity => "planarity",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub clause: Clause,
    pub subject: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.clause, self.subject, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    ValidWithHoops,
    Invalid(Vec<Violation>),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        !matches!(self, Verdict::Invalid(_))
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Invalid(v) => v,
            _ => &[],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    From,
    To,
}

/// Incident edge ends at a vertex, in slot order.
#[derive(Clone, Debug)]
struct Incidence {
    edge: usize,
    side: Side,
}

impl Chart {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertex(&self, id: &str) -> Option<&Vertex> {
        self.vertices.iter().find(|v| v.id == id)
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn count(&self, kind: VertexKind) -> usize {
        self.vertices.iter().filter(|v| v.kind == kind).count()
    }

    /// Disjoint union; ids of `other` must not clash with ours. Boundary
    /// vertices of `other` follow ours along the boundary.
    pub fn disjoint_union(&self, other: &Chart) -> Chart {
        let mut out = self.clone();
        out.vertices.extend(other.vertices.iter().cloned());
        out.edges.extend(other.edges.iter().cloned());
        out.boundary_order
            .extend(other.boundary_order.iter().cloned());
        out.hoops.extend(other.hoops.iter().cloned());
        out
    }

    /// Rotation at `vertex`: the `(edge id, outgoing)` pairs in slot order.
    pub fn rotation(&self, vertex: &str) -> Vec<(String, bool)> {
        let mut ends: Vec<(usize, &str, bool)> = Vec::new();
        for e in &self.edges {
            if e.from.vertex == vertex {
                ends.push((e.from.slot, &e.id, true));
            }
            if e.to.vertex == vertex {
                ends.push((e.to.slot, &e.id, false));
            }
        }
        ends.sort();
        ends.into_iter()
            .map(|(_, id, out)| (id.to_string(), out))
            .collect()
    }
}

/// Checks every chart condition; violations are sorted.
pub fn validate(chart: &Chart) -> Verdict {
    let mut v = Vec::new();
    let boundary_bad = std::cell::Cell::new(false);
    let mut push = |clause: Clause, subject: &str, detail: String| {
        if clause == Clause::Boundary {
            boundary_bad.set(true);
        }
        v.push(Violation {
            clause,
            subject: subject.to_string(),
            detail,
        })
    };

    let mut vindex: HashMap<&str, usize> = HashMap::new();
    for (i, vx) in chart.vertices.iter().enumerate() {
        if vindex.insert(&vx.id, i).is_some() {
            push(Clause::Structure, &vx.id, "duplicate vertex id".into());
        }
    }
    let mut eids: BTreeSet<&str> = BTreeSet::new();
    for id in chart
        .edges
        .iter()
        .map(|e| &e.id)
        .chain(chart.hoops.iter().map(|h| &h.id))
    {
        if !eids.insert(id) {
            push(Clause::Structure, id, "duplicate edge or hoop id".into());
        }
    }

    let mut incid: Vec<Vec<(usize, Incidence)>> = vec![Vec::new(); chart.vertices.len()];
    let mut endpoints_ok = true;
    for (ei, e) in chart.edges.iter().enumerate() {
        if e.label != 1 && e.label != 2 {
            push(
                Clause::Structure,
                &e.id,
                format!("label {} is not 1 or 2", e.label),
            );
        }
        for (end, side) in [(&e.from, Side::From), (&e.to, Side::To)] {
            match vindex.get(end.vertex.as_str()) {
                Some(&vi) => incid[vi].push((end.slot, Incidence { edge: ei, side })),
                None => {
                    endpoints_ok = false;
                    push(
                        Clause::Structure,
                        &e.id,
                        format!("endpoint {:?} is not a vertex", end.vertex),
                    );
                }
            }
        }
    }
    let mut slots_ok = endpoints_ok;
    for (vi, list) in incid.iter_mut().enumerate() {
        list.sort_by_key(|(slot, inc)| (*slot, inc.edge, inc.side == Side::To));
        let slots: Vec<usize> = list.iter().map(|(s, _)| *s).collect();
        if slots.iter().enumerate().any(|(i, &s)| s != i) {
            slots_ok = false;
            push(
                Clause::Structure,
                &chart.vertices[vi].id,
                format!("slots {slots:?} are not 0..{}", slots.len()),
            );
        }
    }

    for (vi, vx) in chart.vertices.iter().enumerate() {
        let deg = incid[vi].len();
        if ![1, 6, 12].contains(&deg) {
            push(
                Clause::Degree,
                &vx.id,
                format!("degree {deg} is not 1, 6 or 12"),
            );
            continue;
        }
        if deg != vx.kind.expected_degree() {
            push(
                Clause::Degree,
                &vx.id,
                format!("{} vertex has degree {deg}", vx.kind),
            );
            continue;
        }
        let labels: Vec<u8> = incid[vi]
            .iter()
            .map(|(_, i)| chart.edges[i.edge].label)
            .collect();
        let inward: Vec<bool> = incid[vi].iter().map(|(_, i)| i.side == Side::To).collect();
        let alternating = (0..deg).all(|i| labels[i] != labels[(i + 1) % deg]);
        match vx.kind {
            VertexKind::Deg6 => {
                if !alternating {
                    push(
                        Clause::Degree6,
                        &vx.id,
                        format!("labels {labels:?} do not alternate"),
                    );
                }
                let ins = inward.iter().filter(|&&b| b).count();
                let changes = (0..deg)
                    .filter(|&i| inward[i] != inward[(i + 1) % deg])
                    .count();
                if ins != 3 || changes != 2 {
                    push(
                        Clause::Degree6,
                        &vx.id,
                        "orientations are not three consecutive inward and three outward".into(),
                    );
                }
            }
            VertexKind::Deg12Negative | VertexKind::Deg12Positive => {
                if !alternating {
                    push(
                        Clause::Degree12,
                        &vx.id,
                        format!("labels {labels:?} do not alternate"),
                    );
                }
                let want_in = vx.kind == VertexKind::Deg12Negative;
                if inward.iter().any(|&b| b != want_in) {
                    let dir = if want_in { "inward" } else { "outward" };
                    push(
                        Clause::Degree12,
                        &vx.id,
                        format!("{} vertex needs all edges {dir}", vx.kind),
                    );
                }
            }
            VertexKind::Black => {
                if inward[0] {
                    push(
                        Clause::BlackOutward,
                        &vx.id,
                        "incident edge is oriented inward".into(),
                    );
                }
            }
            VertexKind::Boundary => {}
        }
    }

    let mut seen_on_boundary: BTreeMap<&str, usize> = BTreeMap::new();
    for id in &chart.boundary_order {
        *seen_on_boundary.entry(id).or_default() += 1;
        match chart.vertex(id) {
            None => push(
                Clause::Boundary,
                id,
                "boundary entry is not a vertex".into(),
            ),
            Some(vx) if vx.kind != VertexKind::Boundary => push(
                Clause::Boundary,
                id,
                format!("{} vertex placed on the boundary", vx.kind),
            ),
            _ => {}
        }
    }
    for (id, n) in &seen_on_boundary {
        if *n > 1 {
            push(
                Clause::Boundary,
                id,
                format!("appears {n} times on the boundary"),
            );
        }
    }
    for vx in &chart.vertices {
        if vx.kind == VertexKind::Boundary && !seen_on_boundary.contains_key(vx.id.as_str()) {
            push(
                Clause::Boundary,
                &vx.id,
                "boundary vertex missing from boundary order".into(),
            );
        }
    }

    let hoop_ids: HashMap<&str, Option<&str>> = chart
        .hoops
        .iter()
        .map(|h| (h.id.as_str(), h.parent.as_deref()))
        .collect();
    for h in &chart.hoops {
        if h.label != 1 && h.label != 2 {
            push(
                Clause::Structure,
                &h.id,
                format!("label {} is not 1 or 2", h.label),
            );
        }
        let mut cur = h.parent.as_deref();
        let mut steps = 0;
        while let Some(p) = cur {
            if !hoop_ids.contains_key(p) {
                push(
                    Clause::Structure,
                    &h.id,
                    format!("parent {p:?} is not a hoop"),
                );
                break;
            }
            steps += 1;
            if steps > chart.hoops.len() {
                push(Clause::Structure, &h.id, "hoop nesting is cyclic".into());
                break;
            }
            cur = hoop_ids[p];
        }
    }

    if slots_ok && !boundary_bad.get() {
        if let Some(detail) = planarity_defect(chart, &incid) {
            push(Clause::Planarity, "chart", detail);
        }
    }

    if v.is_empty() {
        if chart.hoops.is_empty() {
            Verdict::Valid
        } else {
            Verdict::ValidWithHoops
        }
    } else {
        v.sort();
        v.dedup();
        Verdict::Invalid(v)
    }
}

/// Face tracing on the rotation system plus the boundary circle.
fn planarity_defect(chart: &Chart, incid: &[Vec<(usize, Incidence)>]) -> Option<String> {
    let nv = chart.vertices.len();
    let ne = chart.edges.len();
    let vindex: HashMap<&str, usize> = chart
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id.as_str(), i))
        .collect();
    let nb = chart.boundary_order.len();
    // darts 2e / 2e+1 for chart edges; boundary arc j joins B_j to B_{j+1}
    let arc_base = 2 * ne;
    let ndarts = arc_base + 2 * nb;
    let mut tail = vec![0usize; ndarts];
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (vi, list) in incid.iter().enumerate() {
        for (_, inc) in list {
            let d = 2 * inc.edge + usize::from(inc.side == Side::To);
            tail[d] = vi;
            rot[vi].push(d);
        }
    }
    let bverts: Vec<usize> = chart
        .boundary_order
        .iter()
        .map(|id| vindex[id.as_str()])
        .collect();
    for (j, &vi) in bverts.iter().enumerate() {
        let fwd = arc_base + 2 * j;
        let prev = (j + nb - 1) % nb;
        let bwd = arc_base + 2 * prev + 1;
        tail[fwd] = vi;
        tail[bwd] = vi;
        // counterclockwise: along the boundary, into the disk, back along it
        let mut r = vec![fwd];
        r.extend(rot[vi].iter().copied());
        r.push(bwd);
        rot[vi] = r;
    }
    let mut pos = vec![(0usize, 0usize); ndarts];
    for (vi, r) in rot.iter().enumerate() {
        for (i, &d) in r.iter().enumerate() {
            pos[d] = (vi, i);
        }
    }
    let twin = |d: usize| d ^ 1;
    let next_in_face = |d: usize| {
        let t = twin(d);
        let (vi, i) = pos[t];
        rot[vi][(i + 1) % rot[vi].len()]
    };

    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let n = p[c];
            p[c] = r;
            c = n;
        }
        r
    }
    for d in (0..ndarts).step_by(2) {
        let (a, b) = (find(&mut parent, tail[d]), find(&mut parent, tail[d ^ 1]));
        parent[a] = b;
    }

    let mut seen = vec![false; ndarts];
    let mut faces: BTreeMap<usize, i64> = BTreeMap::new();
    let mut outer_found = nb == 0;
    for d0 in 0..ndarts {
        if seen[d0] {
            continue;
        }
        let mut d = d0;
        // faces are traced with the face on the right, so the outside of
        // the disk is the face made of the forward boundary arcs
        let mut only_fwd_arcs = true;
        let mut len = 0;
        loop {
            seen[d] = true;
            len += 1;
            if d < arc_base || (d - arc_base) % 2 == 1 {
                only_fwd_arcs = false;
            }
            d = next_in_face(d);
            if d == d0 {
                break;
            }
        }
        if only_fwd_arcs && len == nb {
            outer_found = true;
        }
        let root = find(&mut parent, tail[d0]);
        *faces.entry(root).or_default() += 1;
    }
    let mut vcount: BTreeMap<usize, i64> = BTreeMap::new();
    let mut ecount: BTreeMap<usize, i64> = BTreeMap::new();
    for vi in 0..nv {
        *vcount.entry(find(&mut parent, vi)).or_default() += 1;
    }
    for d in (0..ndarts).step_by(2) {
        *ecount.entry(find(&mut parent, tail[d])).or_default() += 1;
    }
    for (root, vc) in &vcount {
        let ec = ecount.get(root).copied().unwrap_or(0);
        // an isolated vertex bounds one face
        let fc = faces.get(root).copied().unwrap_or(1);
        let chi = vc - ec + fc;
        if chi != 2 {
            return Some(format!(
                "component of {:?} has V-E+F = {chi}, not a disk embedding",
                chart.vertices[*root].id
            ));
        }
    }
    if !outer_found {
        return Some("boundary circle does not bound the outer face".into());
    }
    None
}

/// One boundary vertex read along the boundary: the label of its edge and
/// whether that edge points into the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundaryLetter {
    pub label: u8,
    pub incoming: bool,
}

impl fmt::Display for BoundaryLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.incoming {
            write!(f, "U{}", self.label)
        } else {
            write!(f, "U{}^-1", self.label)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWord(pub Vec<BoundaryLetter>);

impl BoundaryWord {
    /// `(q, k)` when the word is `(U1 U2)^{3q} U1^k`.
    pub fn unit_shape(&self) -> Option<(u8, usize)> {
        let w = &self.0;
        if w.iter().any(|l| !l.incoming) {
            return None;
        }
        let labels: Vec<u8> = w.iter().map(|l| l.label).collect();
        let prefix = [1, 2, 1, 2, 1, 2];
        let (q, rest) = if labels.len() >= 6 && labels[..6] == prefix {
            (1, &labels[6..])
        } else {
            (0, &labels[..])
        };
        rest.iter().all(|&l| l == 1).then_some((q, rest.len()))
    }

    /// The word read as generators: `U_i` contributes `s_i`.
    pub fn generator_word(&self) -> GeneratorWord {
        GeneratorWord::new(
            self.0
                .iter()
                .map(|l| Letter::from_label(l.label, l.incoming).expect("labels are 1 or 2"))
                .collect(),
        )
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartCounts {
    /// Number of black vertices.
    pub c: usize,
    /// Negative minus positive degree-twelve vertices.
    pub p_signed: i64,
    pub boundary_word: BoundaryWord,
}

/// Black count, signed degree-twelve count and boundary word of a valid chart.
///
/// Counting sources and targets of edges gives
/// `c + 12·#positive + #outgoing boundary = 12·#negative + #incoming boundary`,
/// so for a boundary word `(U1 U2)^{3q} U1^k` the identity `c = 12p + 6q + k`
/// is checked before returning.
pub fn chart_counts(chart: &Chart) -> Result<ChartCounts, ChartError> {
    if let Verdict::Invalid(v) = validate(chart) {
        return Err(ChartError::Invalid(v));
    }
    let c = chart.count(VertexKind::Black);
    let p_signed = chart.count(VertexKind::Deg12Negative) as i64
        - chart.count(VertexKind::Deg12Positive) as i64;
    let letters = chart
        .boundary_order
        .iter()
        .map(|id| {
            let e = chart
                .edges
                .iter()
                .find(|e| e.from.vertex == *id || e.to.vertex == *id)
                .expect("valid boundary vertices have one edge");
            BoundaryLetter {
                label: e.label,
                incoming: e.to.vertex == *id,
            }
        })
        .collect();
    let counts = ChartCounts {
        c,
        p_signed,
        boundary_word: BoundaryWord(letters),
    };
    if let Some((q, k)) = counts.boundary_word.unit_shape() {
        if c as i64 != 12 * p_signed + 6 * q as i64 + k as i64 {
            return Err(ChartError::CountingIdentity { c, p_signed, q, k });
        }
    }
    Ok(counts)
}

/// Source and target kinds of an edge, e.g. `(black, deg12_negative)`.
pub fn edge_type(chart: &Chart, edge: &Edge) -> Option<(VertexKind, VertexKind)> {
    Some((
        chart.vertex(&edge.from.vertex)?.kind,
        chart.vertex(&edge.to.vertex)?.kind,
    ))
}

fn nucleon(tag: &str) -> Chart {
    let center = format!("{tag}c");
    let mut chart = Chart::empty();
    chart.vertices.push(Vertex {
        id: center.clone(),
        kind: VertexKind::Deg12Negative,
    });
    for i in 0..12 {
        let b = format!("{tag}b{i}");
        chart.vertices.push(Vertex {
            id: b.clone(),
            kind: VertexKind::Black,
        });
        chart.edges.push(Edge {
            id: format!("{tag}e{i}"),
            label: if i % 2 == 0 { 1 } else { 2 },
            from: EdgeEnd { vertex: b, slot: 0 },
            to: EdgeEnd {
                vertex: center.clone(),
                slot: i,
            },
        });
    }
    chart
}

fn unit(tag: &str, label: u8) -> Chart {
    let (b, y) = (format!("{tag}b"), format!("{tag}y"));
    Chart {
        vertices: vec![
            Vertex {
                id: b.clone(),
                kind: VertexKind::Black,
            },
            Vertex {
                id: y.clone(),
                kind: VertexKind::Boundary,
            },
        ],
        edges: vec![Edge {
            id: format!("{tag}e"),
            label,
            from: EdgeEnd { vertex: b, slot: 0 },
            to: EdgeEnd {
                vertex: y.clone(),
                slot: 0,
            },
        }],
        boundary_order: vec![y],
        hoops: vec![],
    }
}

/// `N^p ⨿ (U1 U2)^{3q} U1^k`.
pub fn canonical_chart(p: i64, q: i64, k: i64) -> Result<Chart, ChartError> {
    if p < 0 || !(0..=1).contains(&q) || k < 0 {
        return Err(ChartError::InvalidParameters { p, q, k });
    }
    let mut chart = Chart::empty();
    for j in 0..p {
        chart = chart.disjoint_union(&nucleon(&format!("n{j}")));
    }
    let labels = [1u8, 2].repeat(3 * q as usize);
    for (j, label) in labels
        .into_iter()
        .chain(std::iter::repeat_n(1, k as usize))
        .enumerate()
    {
        chart = chart.disjoint_union(&unit(&format!("u{j}"), label));
    }
    Ok(chart)
}

/// How a transverse loop crosses the chart: the edges met in order, with
/// `+1` when the edge runs left to right across the loop.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossingSequence(pub Vec<(String, i8)>);

impl FromStr for CrossingSequence {
    type Err = String;
    /// Whitespace-separated `edge:+1` / `edge:-1` tokens.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|tok| {
                let (id, sign) = tok
                    .rsplit_once(':')
                    .ok_or_else(|| format!("crossing {tok:?} lacks a :sign suffix"))?;
                let sign = match sign {
                    "+1" | "1" | "+" => 1,
                    "-1" | "-" => -1,
                    other => return Err(format!("bad crossing sign {other:?}")),
                };
                Ok((id.to_string(), sign))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(CrossingSequence)
    }
}

impl fmt::Display for CrossingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (id, s)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{id}:{}", if *s > 0 { "+1" } else { "-1" })?;
        }
        Ok(())
    }
}

/// The letter `s_i^ε` for each crossing, `i` the crossed edge's label.
pub fn intersection_word(
    chart: &Chart,
    path: &CrossingSequence,
) -> Result<GeneratorWord, ChartError> {
    let labels: HashMap<&str, u8> = chart
        .edges
        .iter()
        .map(|e| (e.id.as_str(), e.label))
        .chain(chart.hoops.iter().map(|h| (h.id.as_str(), h.label)))
        .collect();
    path.0
        .iter()
        .map(|(id, sign)| {
            let label = *labels
                .get(id.as_str())
                .ok_or_else(|| ChartError::UnknownEdge(id.clone()))?;
            if *sign != 1 && *sign != -1 {
                return Err(ChartError::BadSign(*sign));
            }
            Letter::from_label(label, *sign > 0).ok_or(ChartError::UnknownEdge(id.clone()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(GeneratorWord::new)
}

/// Hurwitz system read off `N^p ⨿ (U1 U2)^{3q} U1^k`.
pub fn monodromy_of_canonical(p: i64, q: i64, k: i64) -> Result<Factorization, ChartError> {
    canonical_form(p, q, k).map_err(|_| ChartError::InvalidParameters { p, q, k })
}

/// Graphviz rendering: edge labels `1`/`2`, vertex shapes by kind.
pub fn to_dot(chart: &Chart) -> String {
    let mut out = String::from("digraph chart {\n");
    for v in &chart.vertices {
        let attrs = match v.kind {
            VertexKind::Black => "shape=point, width=0.12, style=filled, color=black",
            VertexKind::Boundary => "shape=square, width=0.15, label=\"\"",
            VertexKind::Deg6 => "shape=hexagon, label=\"\"",
            VertexKind::Deg12Negative => "shape=doublecircle, label=\"-\"",
            VertexKind::Deg12Positive => "shape=doublecircle, label=\"+\"",
        };
        let _ = writeln!(out, "  \"{}\" [{attrs}];", v.id);
    }
    for e in &chart.edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            e.from.vertex, e.to.vertex, e.label
        );
    }
    if chart.boundary_order.len() > 1 {
        let _ = writeln!(
            out,
            "  {{ rank=same; {} }}",
            chart
                .boundary_order
                .iter()
                .map(|id| format!("\"{id}\""))
                .collect::<Vec<_>>()
                .join("; ")
        );
    }
    out.push_str("}\n");
    out
}
