use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DataError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown {kind} `{name}` (line {line})")]
    Reference { kind: &'static str, name: String, line: usize },
    #[error("checksum mismatch for {what}: expected {expected}, computed {computed}")]
    Checksum { what: String, expected: String, computed: String },
    #[error("{0}")]
    Invalid(String),
}

fn parse_err(line: usize, message: impl Into<String>) -> DataError {
    DataError::Parse { line, message: message.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PentagonRecord {
    pub id: String,
    pub group: String,
    /// reflection word addressing the 120-cell, as facet ids
    pub word: Vec<u32>,
    pub clique: [u32; 2],
    pub line: usize,
}

/// One end of an edge record: a pentagon and the facet cutting out the edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeEnd {
    pub pentagon: String,
    pub slot: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub group: String,
    pub name: String,
    pub a: EdgeEnd,
    pub b: EdgeEnd,
    pub pleat: bool,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideRecord {
    pub id: String,
    pub label: String,
    pub arcs: Vec<EdgeEnd>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingRecord {
    pub a: String,
    pub b: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub name: String,
    pub group: String,
    pub edges: Vec<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttachmentRecord {
    pub complex: String,
    pub kind: String,
    pub args: Vec<String>,
    pub line: usize,
}

/// A parsed scenario file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScenarioData {
    pub facets: BTreeMap<String, u32>,
    pub pentagons: Vec<PentagonRecord>,
    pub edges: Vec<EdgeRecord>,
    pub sides: Vec<SideRecord>,
    pub pairings: Vec<PairingRecord>,
    pub curves: Vec<CurveRecord>,
    pub attachments: Vec<AttachmentRecord>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Facets,
    Pentagons,
    Edges,
    Sides,
    Pairings,
    Curves,
    Attachments,
}

/// The scenario bundled with the crate.
pub const BUNDLED: &str = include_str!("../../data/scenario.txt");

impl ScenarioData {
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled scenario parses")
    }

    pub fn parse(text: &str) -> Result<Self, DataError> {
        let mut out = ScenarioData::default();
        let mut section = None;
        let mut version_seen = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let toks: Vec<&str> = content.split_whitespace().collect();
            if !version_seen {
                if toks != ["VERSION", "1"] {
                    return Err(parse_err(line, "expected `VERSION 1` header"));
                }
                version_seen = true;
                continue;
            }
            let next = match toks[0] {
                "FACETS" => Some(Section::Facets),
                "PENTAGONS" => Some(Section::Pentagons),
                "EDGES" => Some(Section::Edges),
                "SIDES" => Some(Section::Sides),
                "PAIRINGS" => Some(Section::Pairings),
                "CURVES" => Some(Section::Curves),
                "ATTACHMENTS" => Some(Section::Attachments),
                _ => None,
            };
            if let Some(s) = next {
                if toks.len() != 1 {
                    return Err(parse_err(line, "section keyword takes no arguments"));
                }
                section = Some(s);
                continue;
            }
            match section {
                None => return Err(parse_err(line, format!("`{}` outside any section", toks[0]))),
                Some(Section::Facets) => out.parse_facet(line, &toks)?,
                Some(Section::Pentagons) => out.parse_pentagon(line, &toks)?,
                Some(Section::Edges) => out.parse_edge(line, &toks)?,
                Some(Section::Sides) => out.parse_side(line, &toks)?,
                Some(Section::Pairings) => {
                    if toks.len() != 2 {
                        return Err(parse_err(line, "pairing needs two side ids"));
                    }
                    out.pairings.push(PairingRecord { a: toks[0].into(), b: toks[1].into(), line });
                }
                Some(Section::Curves) => {
                    if toks.len() < 3 {
                        return Err(parse_err(line, "curve needs a name, a group and edges"));
                    }
                    let edges = toks[2..].iter().map(|s| s.to_string()).collect();
                    out.curves.push(CurveRecord { name: toks[0].into(), group: toks[1].into(), edges, line });
                }
                Some(Section::Attachments) => {
                    if toks.len() < 2 {
                        return Err(parse_err(line, "attachment needs a complex and a kind"));
                    }
                    let args = toks[2..].iter().map(|s| s.to_string()).collect();
                    out.attachments.push(AttachmentRecord { complex: toks[0].into(), kind: toks[1].into(), args, line });
                }
            }
        }
        if !version_seen {
            return Err(parse_err(1, "empty scenario"));
        }
        out.check_references()?;
        Ok(out)
    }

    /// A facet id written as a name from the FACETS section or a number.
    pub fn facet(&self, line: usize, tok: &str) -> Result<u32, DataError> {
        if let Some(&id) = self.facets.get(tok) {
            return Ok(id);
        }
        match tok.parse::<u32>() {
            Ok(n) if n < 120 => Ok(n),
            _ => Err(DataError::Reference { kind: "facet", name: tok.into(), line }),
        }
    }

    fn parse_facet(&mut self, line: usize, toks: &[&str]) -> Result<(), DataError> {
        if toks.len() != 2 {
            return Err(parse_err(line, "facet line is `name id`"));
        }
        let id: u32 = toks[1].parse().map_err(|_| parse_err(line, format!("bad facet id `{}`", toks[1])))?;
        if id >= 120 {
            return Err(parse_err(line, format!("facet id {id} out of range")));
        }
        if toks[0].parse::<u32>().is_ok() || self.facets.insert(toks[0].into(), id).is_some() {
            return Err(parse_err(line, format!("bad or repeated facet name `{}`", toks[0])));
        }
        Ok(())
    }

    fn parse_pentagon(&mut self, line: usize, toks: &[&str]) -> Result<(), DataError> {
        if toks.len() != 4 {
            return Err(parse_err(line, "pentagon line is `id group word clique`"));
        }
        let word = if toks[2] == "-" {
            Vec::new()
        } else {
            toks[2].split('.').map(|t| self.facet(line, t)).collect::<Result<_, _>>()?
        };
        let k: Vec<u32> = toks[3].split(',').map(|t| self.facet(line, t)).collect::<Result<_, _>>()?;
        if k.len() != 2 || k[0] == k[1] {
            return Err(parse_err(line, "a pentagon is cut out by two distinct facets"));
        }
        if self.pentagons.iter().any(|p| p.id == toks[0]) {
            return Err(parse_err(line, format!("repeated pentagon `{}`", toks[0])));
        }
        self.pentagons.push(PentagonRecord { id: toks[0].into(), group: toks[1].into(), word, clique: [k[0], k[1]], line });
        Ok(())
    }

    fn parse_end(&self, line: usize, tok: &str) -> Result<EdgeEnd, DataError> {
        let (p, s) = tok.split_once(':').ok_or_else(|| parse_err(line, format!("expected `pentagon:facet`, got `{tok}`")))?;
        Ok(EdgeEnd { pentagon: p.into(), slot: self.facet(line, s)? })
    }

    fn parse_edge(&mut self, line: usize, toks: &[&str]) -> Result<(), DataError> {
        if toks.len() != 5 {
            return Err(parse_err(line, "edge line is `group name pentagon:facet pentagon:facet thin|pleat`"));
        }
        let pleat = match toks[4] {
            "pleat" => true,
            "thin" => false,
            other => return Err(parse_err(line, format!("edge flag must be thin or pleat, got `{other}`"))),
        };
        let (a, b) = (self.parse_end(line, toks[2])?, self.parse_end(line, toks[3])?);
        self.edges.push(EdgeRecord { group: toks[0].into(), name: toks[1].into(), a, b, pleat, line });
        Ok(())
    }

    fn parse_side(&mut self, line: usize, toks: &[&str]) -> Result<(), DataError> {
        if toks.len() < 3 {
            return Err(parse_err(line, "side line is `id label arc...`"));
        }
        let arcs = toks[2..].iter().map(|t| self.parse_end(line, t)).collect::<Result<_, _>>()?;
        self.sides.push(SideRecord { id: toks[0].into(), label: toks[1].into(), arcs, line });
        Ok(())
    }

    fn check_references(&self) -> Result<(), DataError> {
        let ids: BTreeSet<&str> = self.pentagons.iter().map(|p| p.id.as_str()).collect();
        let missing = |name: &str, line| DataError::Reference { kind: "pentagon", name: name.into(), line };
        for e in &self.edges {
            for end in [&e.a, &e.b] {
                if !ids.contains(end.pentagon.as_str()) {
                    return Err(missing(&end.pentagon, e.line));
                }
            }
        }
        for s in &self.sides {
            for end in &s.arcs {
                if !ids.contains(end.pentagon.as_str()) {
                    return Err(missing(&end.pentagon, s.line));
                }
            }
        }
        let sides: BTreeSet<&str> = self.sides.iter().map(|s| s.id.as_str()).collect();
        for p in &self.pairings {
            for s in [&p.a, &p.b] {
                if !sides.contains(s.as_str()) {
                    return Err(DataError::Reference { kind: "side", name: s.clone(), line: p.line });
                }
            }
        }
        for c in &self.curves {
            for e in &c.edges {
                let name = e.trim_start_matches('-');
                if !self.edges.iter().any(|r| r.group == c.group && r.name == name) {
                    return Err(DataError::Reference { kind: "edge", name: name.into(), line: c.line });
                }
            }
        }
        Ok(())
    }

    pub fn pentagon(&self, id: &str) -> Option<&PentagonRecord> {
        self.pentagons.iter().find(|p| p.id == id)
    }

    pub fn pentagons_in<'a>(&'a self, group: &'a str) -> impl Iterator<Item = &'a PentagonRecord> + 'a {
        self.pentagons.iter().filter(move |p| p.group == group)
    }

    pub fn edges_in<'a>(&'a self, group: &'a str) -> impl Iterator<Item = &'a EdgeRecord> + 'a {
        self.edges.iter().filter(move |e| e.group == group)
    }

    pub fn edge(&self, group: &str, name: &str) -> Option<&EdgeRecord> {
        self.edges.iter().find(|e| e.group == group && e.name == name)
    }

    pub fn attachments_for<'a>(&'a self, complex: &'a str) -> impl Iterator<Item = &'a AttachmentRecord> + 'a {
        self.attachments.iter().filter(move |a| a.complex == complex)
    }
}
