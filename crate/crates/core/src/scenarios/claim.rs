use super::data::ScenarioData;
use super::disc::{Disc, Side};
use super::report::Check;
use super::surface::SurfaceS;
use super::{fail, Context, ScenarioError};
use crate::golden::{classify_pair, separates, Hyperplane, LorentzMatrix, LorentzVector, PairClass};
use std::collections::{BTreeMap, BTreeSet};

/// Letters of the side labels and names of the disc's sides and facets.
#[derive(Clone, Debug)]
pub struct Lettering {
    /// base-cell facet to letter
    pub letters: BTreeMap<usize, char>,
    /// side index to id such as `B2`
    pub side_ids: Vec<String>,
}

/// A is the label of the sides whose pairing changes midway and C the label of
/// their partners; the six labels then form a path A–B–C–D–E–F in the 600-cell.
pub fn letter_sides(ctx: &Context, d: &Disc) -> Result<Lettering, ScenarioError> {
    let facets = d.facets();
    let split: BTreeSet<usize> = facets.windows(2).filter(|w| w[0].0 == w[1].0).map(|w| d.sides[w[0].0].label).collect();
    let a = match split.iter().collect::<Vec<_>>()[..] {
        [&a] => a,
        _ => return Err(fail(format!("split sides carry labels {split:?}"))),
    };
    let owner = facet_of_arc(&facets);
    let partner = |f: &Side| -> usize {
        let k = d.arcs.iter().position(|x| x.slot == d.arcs[f.arcs[0]].partner).unwrap();
        owner[&k]
    };
    let c: BTreeSet<usize> =
        facets.iter().filter(|(_, f)| f.label == a).map(|(_, f)| facets[partner(f)].1.label).collect();
    let labels: BTreeSet<usize> = d.sides.iter().map(|s| s.label).collect();
    let mut path = vec![a];
    while let Some(&next) =
        labels.iter().find(|&&l| !path.contains(&l) && ctx.tess.adjacent_facets(*path.last().unwrap()).contains(&l))
    {
        path.push(next);
    }
    if path.len() != labels.len() || c.len() != 1 || path.get(2) != c.iter().next() {
        return Err(fail(format!("labels {labels:?} do not form the path A-B-C-..: got {path:?}, A partners {c:?}")));
    }
    let letters: BTreeMap<usize, char> = path.iter().zip('A'..).map(|(&l, ch)| (l, ch)).collect();
    let mut count: BTreeMap<char, usize> = BTreeMap::new();
    let side_ids = d
        .sides
        .iter()
        .map(|s| {
            let ch = letters[&s.label];
            let n = count.entry(ch).or_insert(0);
            *n += 1;
            format!("{ch}{n}")
        })
        .collect();
    Ok(Lettering { letters, side_ids })
}

fn facet_of_arc(facets: &[(usize, Side)]) -> BTreeMap<usize, usize> {
    facets.iter().enumerate().flat_map(|(i, (_, f))| f.arcs.iter().map(move |&k| (k, i))).collect()
}

fn adjacent(n: usize, i: usize, j: usize) -> bool {
    (i + 1) % n == j || (j + 1) % n == i
}

/// The hyperplanes through the uncut thin edges, named α (inside S₀), β, γ (on Θ).
pub fn separators(ctx: &Context, d: &Disc, s: &SurfaceS) -> Result<Vec<(char, Hyperplane, usize)>, ScenarioError> {
    let mut out: Vec<(char, Hyperplane, usize)> = Vec::new();
    for &(slot, pleat) in &d.interior {
        if pleat {
            continue;
        }
        let (other, _) = d.complex.partner(slot).unwrap();
        let parts = [s.surface.part[slot.cell], s.surface.part[other.cell]];
        let h = Hyperplane::new(d.complex.cells[slot.cell].frame.as_ref().unwrap().apply(&ctx.tess.normals[slot.facet as usize]))
            .map_err(|e| fail(e.to_string()))?;
        let name = if parts[0] != parts[1] {
            'γ'
        } else if parts[0] == 0 {
            'α'
        } else {
            'β'
        };
        match out.iter().find(|(_, g, _)| g.same_as(&h)) {
            Some((n, _, _)) if *n != name => return Err(fail(format!("thin edges {n} and {name} share a hyperplane"))),
            Some(_) => {}
            None => {
                let label = ctx.tess.label_hyperplane(&h).ok_or_else(|| fail("separator off the tessellation"))?.0;
                out.push((name, h, label));
            }
        }
    }
    out.sort_by_key(|x| x.0);
    Ok(out)
}

fn separated_by(h: &Hyperplane, a: &Hyperplane, b: &Hyperplane) -> bool {
    classify_pair(h, a) == PairClass::Ultraparallel
        && classify_pair(h, b) == PairClass::Ultraparallel
        && separates(h, a, b).unwrap_or(false)
}

fn label_of(ctx: &Context, frame: &LorentzMatrix, facet: u32) -> Option<usize> {
    let h = Hyperplane::new(frame.apply(&ctx.tess.normals[facet as usize])).ok()?;
    Some(ctx.tess.label_hyperplane(&h)?.0)
}

/// Side records against the computed sides: same arcs in the same order, same letter.
fn side_checksums(d: &Disc, l: &Lettering, data: &ScenarioData) -> Result<usize, String> {
    if data.sides.len() != d.sides.len() {
        return Err(format!("{} side records for {} sides", data.sides.len(), d.sides.len()));
    }
    for (i, s) in d.sides.iter().enumerate() {
        let want: Vec<String> = s.arcs.iter().map(|&k| d.arc_name(k)).collect();
        let Some(r) = data.sides.iter().find(|r| r.id == l.side_ids[i]) else {
            return Err(format!("no record for side {}", l.side_ids[i]));
        };
        let got: Vec<String> = r.arcs.iter().map(|e| format!("{}:{}", e.pentagon, e.slot)).collect();
        let letter = l.letters[&s.label].to_string();
        if got != want || r.label != letter {
            return Err(format!("side {}: computed {letter} {want:?}, recorded {} {got:?}", r.id, r.label));
        }
    }
    Ok(d.sides.len())
}

pub fn verify_claim42(ctx: &Context, d: &Disc, s: &SurfaceS, data: &ScenarioData) -> Vec<Check> {
    let n = d.sides.len();
    let mut out = vec![Check::expect("claim42.sides", n, 20)];

    let mut census: BTreeMap<(bool, PairClass), usize> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            *census.entry((adjacent(n, i, j), classify_pair(&d.sides[i].hyperplane, &d.sides[j].hyperplane))).or_insert(0) += 1;
        }
    }
    let direct_ok = census.keys().all(|&(adj, c)| if adj { c == PairClass::Orthogonal } else { c == PairClass::Ultraparallel });
    let w: Vec<String> = census.iter().map(|((adj, c), k)| format!("{k} {} {c:?}", if *adj { "adjacent" } else { "apart" })).collect();
    out.push(Check::new("claim42.direct", direct_ok, w.join(", ")));

    out.push(match d.pentagon_labels(ctx) {
        Ok(pl) => {
            let distinct: BTreeSet<[usize; 2]> = pl.iter().copied().collect();
            let s0: BTreeSet<[usize; 2]> = pl.iter().zip(&s.surface.part).filter(|(_, &p)| p == 0).map(|(l, _)| *l).collect();
            let p0 = s0.iter().next().copied();
            let on_p0: Vec<u8> = pl.iter().zip(&s.surface.part).filter(|(l, _)| Some(**l) == p0).map(|(_, &p)| p).collect();
            let ok = distinct.len() == 4 && s0.len() == 1 && on_p0.iter().all(|&p| p == 0);
            Check::new("claim42.pentagon_labels", ok, format!("{} labels {distinct:?}, P0 = {p0:?} on {} pentagons", distinct.len(), on_p0.len()))
        }
        Err(e) => Check::error("claim42.pentagon_labels", e),
    });

    let lettering = match letter_sides(ctx, d) {
        Ok(l) => l,
        Err(e) => {
            out.push(Check::error("claim42.side_labels", e));
            return out;
        }
    };
    let letters: String = lettering.letters.values().copied().collect::<BTreeSet<char>>().into_iter().collect();
    let named: Vec<String> = lettering.letters.iter().map(|(l, c)| format!("{c}={l}")).collect();
    out.push(Check::new("claim42.side_labels", letters == "ABCDEF", named.join(" ")));
    out.push(match side_checksums(d, &lettering, data) {
        Ok(k) => Check::new("claim42.side_checksums", true, format!("{k} sides match")),
        Err(e) => Check::new("claim42.side_checksums", false, e),
    });

    let labels: Vec<usize> = lettering.letters.keys().copied().collect();
    let mut graph = BTreeSet::new();
    for &x in &labels {
        for &y in &labels {
            if x < y && ctx.tess.adjacent_facets(x).contains(&y) {
                let (a, b) = (lettering.letters[&x], lettering.letters[&y]);
                graph.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut seen = BTreeSet::new();
    for i in 0..n {
        let (x, y) = (lettering.letters[&d.sides[i].label], lettering.letters[&d.sides[(i + 1) % n].label]);
        seen.insert((x.min(y), x.max(y)));
    }
    let extra: Vec<_> = graph.difference(&seen).collect();
    out.push(Check::new(
        "claim42.label_graph",
        extra.is_empty(),
        format!("600-cell edges {graph:?}; not realised by adjacent sides {extra:?}"),
    ));

    let seps = match separators(ctx, d, s) {
        Ok(x) => x,
        Err(e) => {
            out.push(Check::error("claim42.separators", e));
            return out;
        }
    };
    let names: String = seps.iter().map(|x| x.0).collect();
    out.push(Check::new(
        "claim42.separators",
        names == "αβγ",
        seps.iter().map(|(c, _, l)| format!("{c}={l}")).collect::<Vec<_>>().join(" "),
    ));

    let near = |x: usize, y: usize| x == y || ctx.tess.adjacent_facets(x).contains(&y);
    let (mut pairs, mut bad, mut uses) = (0, Vec::new(), BTreeMap::new());
    for i in 0..n {
        for j in i + 1..n {
            if adjacent(n, i, j) || !near(d.sides[i].label, d.sides[j].label) {
                continue;
            }
            pairs += 1;
            let by: Vec<char> =
                seps.iter().filter(|(_, h, _)| separated_by(h, &d.sides[i].hyperplane, &d.sides[j].hyperplane)).map(|x| x.0).collect();
            *uses.entry(by.len()).or_insert(0) += 1;
            if by.is_empty() {
                bad.push(format!("{}-{}", lettering.side_ids[i], lettering.side_ids[j]));
            }
        }
    }
    out.push(Check::new(
        "claim42.separation",
        bad.is_empty(),
        format!("{pairs} pairs with equal or adjacent labels; pairs by number of separators {uses:?}; unseparated {bad:?}"),
    ));

    let fs: Vec<usize> = (0..n).filter(|&i| lettering.side_ids[i].starts_with('F')).collect();
    let beta = seps.iter().find(|x| x.0 == 'β');
    out.push(match (&fs[..], beta) {
        ([i, j], Some((_, h, _))) => {
            let ok = separated_by(h, &d.sides[*i].hyperplane, &d.sides[*j].hyperplane);
            Check::new("claim42.f_pair", ok, format!("β separates F1, F2: {ok}"))
        }
        _ => Check::new("claim42.f_pair", false, format!("{} F sides", fs.len())),
    });

    let side_labels: BTreeSet<usize> = labels.iter().copied().collect();
    let mut hits = Vec::new();
    for &(slot, _) in &d.interior {
        let cell = &d.complex.cells[slot.cell];
        let f = cell.frame.as_ref().unwrap();
        let tri: Vec<Option<usize>> =
            cell.catalog.clique.iter().chain([&slot.facet]).map(|&q| label_of(ctx, f, q)).collect();
        if tri.iter().any(|l| l.is_none_or(|l| side_labels.contains(&l))) {
            hits.push(format!("{}:{} {tri:?}", cell.name, slot.facet));
        }
    }
    out.push(Check::new(
        "claim42.interior_edges",
        hits.is_empty(),
        if hits.is_empty() { format!("{} interior edges off every side hyperplane", d.interior.len()) } else { hits.join("; ") },
    ));
    out
}

/// A facet of the 22-gon and what the pairings do to it.
#[derive(Clone, Debug)]
pub struct Facet {
    pub side: usize,
    pub id: String,
    pub arcs: Vec<usize>,
    pub hyperplane: Hyperplane,
    pub partner: usize,
    pub pairing: LorentzMatrix,
}

pub fn polygon_facets(d: &Disc, l: &Lettering) -> Vec<Facet> {
    let facets = d.facets();
    let owner = facet_of_arc(&facets);
    let mut halves: BTreeMap<usize, usize> = BTreeMap::new();
    facets
        .iter()
        .map(|(side, f)| {
            let split = facets.iter().filter(|(s, _)| s == side).count() > 1;
            let id = if split {
                let h = halves.entry(*side).or_insert(0);
                *h += 1;
                format!("{}/{h}", l.side_ids[*side])
            } else {
                l.side_ids[*side].clone()
            };
            let k = d.arcs.iter().position(|x| x.slot == d.arcs[f.arcs[0]].partner).unwrap();
            Facet {
                side: *side,
                id,
                arcs: f.arcs.clone(),
                hyperplane: f.hyperplane.clone(),
                partner: owner[&k],
                pairing: d.arcs[f.arcs[0]].pairing.clone(),
            }
        })
        .collect()
}

fn inside_point(d: &Disc, f: &Facet) -> Option<(LorentzVector, i32)> {
    let slot = d.arcs[f.arcs[0]].slot;
    let cell = &d.complex.cells[slot.cell];
    let frame = cell.frame.as_ref()?;
    (0..cell.catalog.faces.len()).filter(|&i| cell.catalog.face_dim(i) == 0).find_map(|i| {
        let p = frame.apply(&super::develop::vertex_point(&d.complex.polytope, &cell.catalog.vertices[i][0]));
        match f.hyperplane.side_of(&p) {
            Ok(0) | Err(_) => None,
            Ok(s) => Some((p, s)),
        }
    })
}

/// Pairing records against the computed facet pairing, by side id.
fn pairing_checksums(fs: &[Facet], data: &ScenarioData) -> Result<usize, String> {
    let base = |id: &str| id.split('/').next().unwrap().to_string();
    let mut got = BTreeSet::new();
    for f in fs {
        let (a, b) = (base(&f.id), base(&fs[f.partner].id));
        got.insert((a.clone().min(b.clone()), a.max(b)));
    }
    let want: BTreeSet<(String, String)> =
        data.pairings.iter().map(|p| (p.a.clone().min(p.b.clone()), p.a.clone().max(p.b.clone()))).collect();
    if got != want {
        return Err(format!("computed {got:?}, recorded {want:?}"));
    }
    Ok(got.len())
}

pub fn verify_poincare_22gon(ctx: &Context, d: &Disc, data: &ScenarioData) -> Vec<Check> {
    let l = match letter_sides(ctx, d) {
        Ok(l) => l,
        Err(e) => return vec![Check::error("poincare.facets", e)],
    };
    let fs = polygon_facets(d, &l);
    let n = fs.len();
    let split: Vec<&Facet> = fs.iter().filter(|f| f.id.contains('/')).collect();
    let split_ok = split.iter().all(|f| f.id.starts_with('A'))
        && d.sides.iter().enumerate().filter(|(i, _)| l.side_ids[*i].starts_with('A')).all(|(i, s)| {
            let h: Vec<&&Facet> = split.iter().filter(|f| f.side == i).collect();
            h.len() == 2 && h[0].arcs.len() == h[1].arcs.len() && h[0].arcs.len() * 2 == s.arcs.len()
        });
    let mut out = vec![Check::new(
        "poincare.facets",
        n == 22 && split_ok,
        format!("{n} facets; split at the middle of each A side: {split_ok}"),
    )];

    let mut kinds: BTreeMap<String, usize> = BTreeMap::new();
    for (i, f) in fs.iter().enumerate() {
        if i < f.partner {
            let (a, b) = (f.id.chars().next().unwrap(), fs[f.partner].id.chars().next().unwrap());
            *kinds.entry(format!("{}↔{}", a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let want: BTreeMap<String, usize> =
        [("A↔C", 4), ("B↔B", 2), ("D↔D", 2), ("E↔E", 2), ("F↔F", 1)].iter().map(|(k, v)| (k.to_string(), *v)).collect();
    out.push(Check::expect("poincare.pairing_letters", kinds, want));
    out.push(match pairing_checksums(&fs, data) {
        Ok(k) => Check::new("poincare.pairing_checksums", true, format!("{k} side pairs match")),
        Err(e) => Check::new("poincare.pairing_checksums", false, e),
    });

    let mut bad = Vec::new();
    for f in &fs {
        let p = &fs[f.partner];
        let g = &f.pairing;
        let mut why = Vec::new();
        if !g.preserves_form() {
            why.push("not an isometry");
        }
        if !g.apply_hyperplane(&f.hyperplane).same_as(&p.hyperplane) {
            why.push("hyperplane not carried onto partner");
        }
        if g.compose(&p.pairing) != LorentzMatrix::identity() {
            why.push("partner pairing is not the inverse");
        }
        let mut ends: Vec<&LorentzVector> = f.arcs.iter().flat_map(|&k| [&d.arcs[k].from, &d.arcs[k].to]).collect();
        let targets: Vec<&LorentzVector> = p.arcs.iter().flat_map(|&k| [&d.arcs[k].from, &d.arcs[k].to]).collect();
        ends.dedup_by(|a, b| a.is_proportional(b));
        if !ends.iter().all(|e| targets.iter().any(|t| g.apply(e).is_proportional(t))) {
            why.push("arcs not carried onto partner arcs");
        }
        match (inside_point(d, f), inside_point(d, p)) {
            (Some((q, s)), Some((_, sp))) => {
                if p.hyperplane.side_of(&g.apply(&q)) != Ok(-sp) || s == 0 {
                    why.push("disc not turned over the partner side");
                }
            }
            _ => why.push("no interior point"),
        }
        if !why.is_empty() {
            bad.push(format!("{}: {}", f.id, why.join(", ")));
        }
    }
    out.push(Check::new(
        "poincare.isometries",
        bad.is_empty(),
        if bad.is_empty() { format!("{n} pairings are exact isometries onto partner facets") } else { bad.join("; ") },
    ));

    out.push(match ridge_cycles(&fs, d) {
        Ok(cycles) => {
            let ok = cycles.iter().all(|c| c.quarter_turns == 4 && c.identity);
            let mut census: BTreeMap<String, usize> = BTreeMap::new();
            for c in &cycles {
                let angles: Vec<&str> = c.angles.iter().map(|&q| if q == 2 { "π" } else { "π/2" }).collect();
                *census.entry(angles.join("+")).or_insert(0) += 1;
            }
            Check::new("poincare.ridge_cycles", ok, format!("{} cycles {census:?}, all 2π with trivial holonomy: {ok}", cycles.len()))
        }
        Err(e) => Check::error("poincare.ridge_cycles", e),
    });
    out
}

#[derive(Clone, Debug)]
pub struct RidgeCycle {
    pub corners: Vec<usize>,
    /// corner angles in units of π/2
    pub angles: Vec<usize>,
    pub quarter_turns: usize,
    /// the cycle transformation is the identity
    pub identity: bool,
}

/// Cycles of the corners of the polygon under the facet pairings.
pub fn ridge_cycles(fs: &[Facet], d: &Disc) -> Result<Vec<RidgeCycle>, ScenarioError> {
    let n = fs.len();
    let start = |f: &Facet| &d.arcs[f.arcs[0]].from;
    let end = |f: &Facet| &d.arcs[*f.arcs.last().unwrap()].to;
    // corner k joins facet k and facet k+1
    let quarters = |k: usize| -> Result<usize, ScenarioError> {
        match classify_pair(&fs[k].hyperplane, &fs[(k + 1) % n].hyperplane) {
            PairClass::Orthogonal => Ok(1),
            PairClass::Equal => Ok(2),
            c => Err(fail(format!("facets {} and {} meet as {c:?}", fs[k].id, fs[(k + 1) % n].id))),
        }
    };
    let mut done = vec![false; n];
    let mut out = Vec::new();
    for k0 in 0..n {
        if done[k0] {
            continue;
        }
        let (mut k, mut f) = (k0, (k0 + 1) % n);
        let mut p = start(&fs[f]).clone();
        let mut corners = Vec::new();
        let mut holonomy = LorentzMatrix::identity();
        let mut turns = 0;
        loop {
            if corners.len() > 2 * n {
                return Err(fail("ridge cycle does not close"));
            }
            done[k] = true;
            corners.push(k);
            turns += quarters(k)?;
            let g = &fs[f].pairing;
            holonomy = g.compose(&holonomy);
            let q = g.apply(&p);
            let t = fs[f].partner;
            let (nk, nf) = if q.is_proportional(start(&fs[t])) {
                ((t + n - 1) % n, (t + n - 1) % n)
            } else if q.is_proportional(end(&fs[t])) {
                (t, (t + 1) % n)
            } else {
                return Err(fail(format!("corner of {} not carried to a corner of {}", fs[f].id, fs[t].id)));
            };
            p = q;
            k = nk;
            f = nf;
            if k == k0 && f == (k0 + 1) % n {
                break;
            }
        }
        let angles = corners.iter().map(|&c| quarters(c)).collect::<Result<Vec<_>, _>>()?;
        out.push(RidgeCycle { corners, angles, quarter_turns: turns, identity: holonomy == LorentzMatrix::identity() });
    }
    Ok(out)
}
