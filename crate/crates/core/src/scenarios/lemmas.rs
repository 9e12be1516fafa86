use super::data::{AttachmentRecord, ScenarioData};
use super::develop::{flag_symmetry, glue_developed, pair_facets, straight_neighbours};
use super::report::Check;
use super::sigma::Sigma;
use super::{fail, Context, ScenarioError};
use crate::corners::{attach_above, mirror, BoundaryFacets, Colouring, CornerComplex, FacetMap, Slot, VertexKey};
use crate::polytopes::Symmetry;
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};

/// Dodecahedra attached above the pentagons of Σ, named after them.
#[derive(Clone, Debug)]
pub struct Thick {
    pub complex: CornerComplex,
    pub cells: BTreeMap<String, usize>,
    /// facet of every dodecahedron lying on Σ
    pub base: u32,
    /// the facet every dodecahedron lies in
    pub keep: u32,
    pub base_slots: Vec<Slot>,
}

/// Thicken Σ inside the facet `keep`; with `flip` the dodecahedra are reflected
/// across the other side of the base hyperplane.
pub fn thicken(ctx: &Context, sigma: &Sigma, keep: u32, flip: bool) -> Result<(Thick, BTreeMap<usize, usize>), ScenarioError> {
    let base = *sigma.clique.iter().find(|&&f| f != keep).ok_or_else(|| fail(format!("facet {keep} does not contain Σ")))?;
    if !sigma.clique.contains(&keep) {
        return Err(fail(format!("facet {keep} does not contain Σ")));
    }
    let th = attach_above(&sigma.complex, &ctx.tess.symmetries, |_| base)?;
    let census = th.top_census();
    let mut complex = th.complex;
    if flip {
        let r = &ctx.tess.reflections[base as usize];
        for c in &mut complex.cells {
            c.frame = c.frame.as_ref().map(|f| f.compose(r));
        }
    }
    let cells = sigma.cells.iter().map(|(n, &i)| (n.clone(), th.layer[i])).collect();
    Ok((Thick { complex, cells, base, keep, base_slots: th.base_slots }, census))
}

impl Thick {
    fn facet_token(&self, ctx: &Context, data: &ScenarioData, line: usize, tok: &str) -> Result<u32, ScenarioError> {
        let c = &ctx.cell;
        let (k, b) = (self.keep as usize, self.base as usize);
        let upper = |n: usize| n != b && !c.adjacent(n, b);
        if tok == "top" {
            let ring: Vec<usize> = c.neighbours(k).filter(|&m| c.adjacent(m, b)).collect();
            let tops: Vec<usize> = c.neighbours(k).filter(|&n| upper(n) && ring.iter().all(|&m| !c.adjacent(n, m))).collect();
            return match tops[..] {
                [t] => Ok(t as u32),
                _ => Err(fail(format!("line {line}: no unique top facet"))),
            };
        }
        if let Some(inner) = tok.strip_prefix("U(").and_then(|s| s.strip_suffix(')')) {
            let (p, q) = inner.split_once(',').ok_or_else(|| fail(format!("line {line}: bad facet `{tok}`")))?;
            let (p, q) = (data.facet(line, p)? as usize, data.facet(line, q)? as usize);
            let hits: Vec<usize> = c.neighbours(k).filter(|&n| upper(n) && c.adjacent(n, p) && c.adjacent(n, q)).collect();
            return match hits[..] {
                [u] => Ok(u as u32),
                _ => Err(fail(format!("line {line}: `{tok}` is not a vertex facet"))),
            };
        }
        Ok(data.facet(line, tok)?)
    }

    /// A slot written `pentagon:facet`, where the facet may be `top` or `U(a,b)`;
    /// `pentagon/y:facet` addresses the cell stacked on facet `y` of the pentagon's cell.
    pub fn slot(&self, ctx: &Context, data: &ScenarioData, line: usize, tok: &str) -> Result<Slot, ScenarioError> {
        let (p, f) = tok.split_once(':').ok_or_else(|| fail(format!("line {line}: expected `cell:facet`, got `{tok}`")))?;
        let (p, over) = match p.split_once('/') {
            Some((p, y)) => (p, Some(y)),
            None => (p, None),
        };
        let mut cell = *self.cells.get(p).ok_or_else(|| fail(format!("line {line}: unknown cell `{p}`")))?;
        if let Some(y) = over {
            let y = self.facet_token(ctx, data, line, y)?;
            cell = self.complex.partner(Slot::new(cell, y)).ok_or_else(|| fail(format!("line {line}: nothing stacked on `{p}/{y}`")))?.0.cell;
        }
        Ok(Slot::new(cell, self.facet_token(ctx, data, line, f)?))
    }
}

/// Attach one dodecahedron above every piece of the boundary facet through `seed`.
pub fn stack_over(ctx: &Context, x: &mut CornerComplex, seed: Slot) -> Result<Vec<usize>, ScenarioError> {
    let facets = x.boundary_facets();
    let f = *facets.facet_of.get(&seed).ok_or_else(|| fail(format!("{seed:?} is not on the boundary")))?;
    let pieces = facets.facets[f].clone();
    let mut links = Vec::new();
    for &p in &pieces {
        for n in straight_neighbours(x, p)? {
            links.push((p, n.through, n.piece, n.through_there));
        }
    }
    let mut new_of = BTreeMap::new();
    for &p in &pieces {
        let c = &x.cells[p.cell];
        let frame = c.frame.as_ref().map(|fr| fr.compose(&ctx.tess.reflections[p.facet as usize]));
        let (k, name) = (c.catalog.clique.clone(), format!("{}|{}", c.name, p.facet));
        let id = x.add_cell(&k, frame, name)?;
        glue_developed(ctx, x, p, Slot::new(id, p.facet), &Symmetry::identity())?;
        new_of.insert(p, id);
    }
    for (p, h, q, h2) in links {
        let a = Slot::new(new_of[&p], h);
        if !x.is_free(a) {
            continue;
        }
        let (_, map) = x.partner(Slot::new(p.cell, h)).ok_or_else(|| fail("straight ridge lost its gluing"))?;
        let t = x.transition(Slot::new(p.cell, h));
        x.glue(a, Slot::new(new_of[&q], h2), FacetMap::new(map.pairs().to_vec()), t)?;
    }
    Ok(pieces.iter().map(|p| new_of[p]).collect())
}

/// A pairing of two boundary facets given by seed pieces and a seed symmetry.
#[derive(Clone, Debug)]
pub struct Pairing {
    pub a: Slot,
    pub b: Slot,
    /// carries the facet at `b` onto the facet at `a`
    pub sym: Symmetry,
}

fn vertex(clique: &[u32], rest: [u32; 3]) -> VertexKey {
    let mut v: Vec<u32> = clique.iter().copied().chain(rest).collect();
    v.sort_unstable();
    v.try_into().unwrap_or([u32::MAX; 4])
}

fn parse_pairing(ctx: &Context, data: &ScenarioData, th: &Thick, rec: &AttachmentRecord) -> Result<Pairing, ScenarioError> {
    let line = rec.line;
    let bad = || fail(format!("line {line}: pair is `a b identity` or `a b through.rest through.rest`"));
    let (a, b) = match &rec.args[..] {
        [a, b, ..] => (th.slot(ctx, data, line, a)?, th.slot(ctx, data, line, b)?),
        _ => return Err(bad()),
    };
    let sym = match &rec.args[2..] {
        [id] if id == "identity" => Symmetry::identity(),
        [fa, fb] => {
            let flag = |s: Slot, tok: &str| -> Result<(VertexKey, u32), ScenarioError> {
                let (r, rest) = tok.split_once('.').ok_or_else(bad)?;
                let (r, rest) = (th.facet_token(ctx, data, line, r)?, th.facet_token(ctx, data, line, rest)?);
                Ok((vertex(&th.complex.cells[s.cell].catalog.clique, [s.facet, r, rest]), r))
            };
            let ((va, ra), (vb, rb)) = (flag(a, fa)?, flag(b, fb)?);
            flag_symmetry(ctx, &th.complex, a, &va, ra, b, &vb, rb).ok_or_else(|| fail(format!("line {line}: no symmetry matches the flags")))?
        }
        _ => return Err(bad()),
    };
    Ok(Pairing { a, b, sym })
}

/// One side of the Y-shaped piece: the thickening with its stacks, before and after pairing.
#[derive(Clone, Debug)]
pub struct BarConstruction {
    pub name: String,
    pub thick: Thick,
    /// top of the plain thickening, by polygon corners
    pub top_census: BTreeMap<usize, usize>,
    /// the thickening with stacks, unpaired
    pub prime: CornerComplex,
    pub stacks: Vec<Vec<usize>>,
    pub pairings: Vec<Pairing>,
    /// the stacked complex with the pairings applied directly
    pub naive: CornerComplex,
    pub naive_non_embedded: usize,
    /// facets of `prime` merging into non-embedded facets of `naive`
    pub problematic: Vec<usize>,
    pub colouring: Option<Colouring>,
    /// `prime` mirrored along the colouring
    pub doubled: Option<CornerComplex>,
    /// the final complex
    pub result: CornerComplex,
}

fn apply_pairings(ctx: &Context, x: &mut CornerComplex, pairs: &[Pairing]) -> Result<(), ScenarioError> {
    for p in pairs {
        pair_facets(ctx, x, p.a, p.b, p.sym.clone())?;
    }
    Ok(())
}

fn all_embedded(x: &CornerComplex) -> bool {
    x.boundary_facets().embedded.iter().all(|&e| e)
}

fn census(facets: &BoundaryFacets, fs: &[usize]) -> BTreeMap<usize, usize> {
    fs.iter().fold(BTreeMap::new(), |mut m, &f| {
        *m.entry(facets.corners[f]).or_insert(0) += 1;
        m
    })
}

/// Two-colourings of `problematic` with the prescribed polygon census per colour
/// whose double mirror admits the pairings with every facet embedded.
fn colouring_search(
    ctx: &Context,
    prime: &CornerComplex,
    problematic: &[usize],
    pairs: &[Pairing],
    want: [&BTreeMap<usize, usize>; 2],
) -> Result<Vec<(Colouring, CornerComplex, CornerComplex)>, ScenarioError> {
    let facets = prime.boundary_facets();
    let mut found = Vec::new();
    for ones in (0..problematic.len()).powerset() {
        let one: Vec<usize> = ones.iter().map(|&i| problematic[i]).collect();
        let two: Vec<usize> = problematic.iter().copied().filter(|f| !one.contains(f)).collect();
        if census(&facets, &one) != *want[0] || census(&facets, &two) != *want[1] {
            continue;
        }
        let mut c = Colouring::new();
        for &f in &one {
            c.colour_facet(&facets, f, 1);
        }
        for &f in &two {
            c.colour_facet(&facets, f, 2);
        }
        if c.validate(prime, &facets).is_err() {
            continue;
        }
        let doubled = mirror(prime, &c)?;
        let mut paired = doubled.clone();
        if apply_pairings(ctx, &mut paired, pairs).is_ok() && all_embedded(&paired) {
            found.push((c, doubled, paired));
        }
    }
    Ok(found)
}

fn parse_census(line: usize, tok: &str) -> Result<BTreeMap<usize, usize>, ScenarioError> {
    let mut m = BTreeMap::new();
    for part in tok.split(',') {
        let (k, n) = part.split_once('x').ok_or_else(|| fail(format!("line {line}: census is `count x corners`, got `{part}`")))?;
        let (n, k): (usize, usize) = (k.parse().map_err(|_| fail(format!("line {line}: bad count")))?, n.parse().map_err(|_| fail(format!("line {line}: bad corners")))?);
        *m.entry(k).or_insert(0) += n;
    }
    Ok(m)
}

/// Build one side from the ATTACHMENTS records of `name`.
pub fn build_bar(ctx: &Context, sigma: &Sigma, data: &ScenarioData, name: &str) -> Result<BarConstruction, ScenarioError> {
    let mut keep = None;
    let mut flip = false;
    let mut want = None;
    for rec in data.attachments_for(name) {
        match (rec.kind.as_str(), &rec.args[..]) {
            ("inside", [f, rest @ ..]) => {
                keep = Some(data.facet(rec.line, f)?);
                flip = match rest {
                    [] => false,
                    [s] if s == "flipped" => true,
                    _ => return Err(fail(format!("line {}: `inside facet [flipped]`", rec.line))),
                };
            }
            ("colours", [a, b]) => want = Some((parse_census(rec.line, a)?, parse_census(rec.line, b)?)),
            ("stack" | "pair", _) => {}
            _ => return Err(fail(format!("line {}: unknown attachment `{}`", rec.line, rec.kind))),
        }
    }
    let keep = keep.ok_or_else(|| fail(format!("{name}: no `inside` record")))?;
    let (thick, top_census) = thicken(ctx, sigma, keep, flip)?;
    let mut prime = thick.complex.clone();
    let mut stacks = Vec::new();
    for rec in data.attachments_for(name).filter(|r| r.kind == "stack") {
        let [tok] = &rec.args[..] else { return Err(fail(format!("line {}: `stack cell:facet`", rec.line))) };
        let seed = thick.slot(ctx, data, rec.line, tok)?;
        stacks.push(stack_over(ctx, &mut prime, seed)?);
    }
    let with_stacks = Thick { complex: prime.clone(), ..thick.clone() };
    let pairings: Vec<Pairing> = data
        .attachments_for(name)
        .filter(|r| r.kind == "pair")
        .map(|r| parse_pairing(ctx, data, &with_stacks, r))
        .collect::<Result<_, _>>()?;
    let mut naive = prime.clone();
    apply_pairings(ctx, &mut naive, &pairings)?;
    let nf = naive.boundary_facets();
    let bad = nf.non_embedded();
    let pf = prime.boundary_facets();
    let problematic: Vec<usize> = bad
        .iter()
        .flat_map(|&f| nf.facets[f].iter().map(|s| pf.facet_of[s]))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (colouring, doubled, result) = if bad.is_empty() {
        (None, None, naive.clone())
    } else {
        let (one, two) = want.ok_or_else(|| fail(format!("{name}: non-embedded facet and no `colours` record")))?;
        let mut found = colouring_search(ctx, &prime, &problematic, &pairings, [&one, &two])?;
        if found.is_empty() {
            return Err(fail(format!("{name}: no admissible colouring of {} facets", problematic.len())));
        }
        let (c, d, r) = found.swap_remove(0);
        (Some(c), Some(d), r)
    };
    Ok(BarConstruction {
        name: name.into(),
        thick,
        top_census,
        prime,
        stacks,
        pairings,
        naive,
        naive_non_embedded: bad.len(),
        problematic,
        colouring,
        doubled,
        result,
    })
}

impl BarConstruction {
    /// Σ is still a single embedded boundary facet made of the original base pieces.
    pub fn nicely_collared(&self) -> bool {
        let f = self.result.boundary_facets();
        let Some(&b) = f.facet_of.get(&self.thick.base_slots[0]) else { return false };
        let pieces: BTreeSet<Slot> = f.facets[b].iter().copied().collect();
        let want: BTreeSet<Slot> = self.thick.base_slots.iter().copied().collect();
        f.embedded[b] && pieces == want
    }

    pub fn checks(&self) -> Vec<Check> {
        let n = &self.name;
        let mut out = vec![Check::expect(format!("{n}.top"), self.top_census.clone(), BTreeMap::from([(5, 8), (8, 10)]))];
        if !self.stacks.is_empty() {
            let sizes: Vec<usize> = self.stacks.iter().map(|s| s.len()).collect();
            out.push(Check::expect(format!("{n}.stacks"), sizes.clone(), vec![4; sizes.len()]));
        }
        if let Some(d) = &self.doubled {
            let pf = self.prime.boundary_facets();
            let parts = census(&pf, &self.problematic);
            let coloured = self.colouring.as_ref().map_or(0, |c| {
                c.slot_colour.keys().map(|s| pf.facet_of[s]).collect::<BTreeSet<_>>().len()
            });
            out.push(Check::new(
                format!("{n}.naive_non_embedded"),
                self.naive_non_embedded == 1 && coloured == self.problematic.len(),
                format!("{} non-embedded facet(s) absorbing facets {:?} (corners: count)", self.naive_non_embedded, parts),
            ));
            out.push(Check::expect(format!("{n}.doubled_cells"), d.cells.len(), 4 * self.prime.cells.len()));
        }
        let f = self.result.boundary_facets();
        let bad = f.non_embedded();
        out.push(Check::new(format!("{n}.embedded"), bad.is_empty(), format!("{} facets, non-embedded {:?}", f.facets.len(), bad)));
        out.push(Check::new(format!("{n}.orientable"), self.result.is_orientable(), format!("{} cells", self.result.cells.len())));
        out.push(Check::new(format!("{n}.collar"), self.nicely_collared(), "Σ is one embedded facet"));
        out
    }
}

/// Build every side named in the ATTACHMENTS section and report on each.
pub fn verify_lemma_constructions(ctx: &Context, data: &ScenarioData) -> Vec<Check> {
    let sigma = match super::build_sigma(ctx, data) {
        Ok(s) => s,
        Err(e) => return vec![Check::error("sigma", e)],
    };
    let top = super::surface_report(&sigma);
    let mut out = vec![top];
    let names: BTreeSet<&str> = data.attachments.iter().map(|a| a.complex.as_str()).collect();
    for n in names {
        match build_bar(ctx, &sigma, data, n) {
            Ok(b) => out.extend(b.checks()),
            Err(e) => out.push(Check::error(n, e)),
        }
    }
    out
}
