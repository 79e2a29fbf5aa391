//! Sweeps over a corpus of graphs and all maps between them: category laws,
//! closure of the inert and active classes, and factorization.

use rayon::prelude::*;

use crate::canon::canonical_encoding;
use crate::enumerate::corpus;
use crate::factorize::{factorize, factorize_with, SearchOrder};
use crate::graph::Graph;
use crate::hom::enumerate_maps;
use crate::morphism::{GraphMap, MapError, MapFilter};

/// A corpus of graphs with every hom-set between them.
pub struct HomTable {
    pub graphs: Vec<Graph>,
    /// `homs[i][j]` lists the maps `graphs[i] → graphs[j]`.
    pub homs: Vec<Vec<Vec<GraphMap>>>,
}

impl HomTable {
    pub fn build(graphs: Vec<Graph>) -> Result<Self, MapError> {
        let homs = graphs
            .par_iter()
            .map(|g| {
                graphs
                    .iter()
                    .map(|h| enumerate_maps(g, h, MapFilter::All))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HomTable { graphs, homs })
    }

    /// The standard corpus: at most `max_vertices` vertices and `max_edges`
    /// edges.
    pub fn corpus(max_vertices: usize, max_edges: usize) -> Result<Self, MapError> {
        HomTable::build(corpus(max_vertices, max_edges))
    }

    pub fn map_count(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }

    pub fn all_maps(&self) -> impl Iterator<Item = &GraphMap> {
        self.homs.iter().flatten().flatten()
    }

    fn n(&self) -> usize {
        self.graphs.len()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawReport {
    pub pairs: usize,
    pub triples: usize,
    pub violations: Vec<String>,
}

impl LawReport {
    fn merge(mut self, other: LawReport) -> LawReport {
        self.pairs += other.pairs;
        self.triples += other.triples;
        self.violations.extend(other.violations);
        self
    }
}

/// Unit laws for every map; for every composable pair the composite is
/// valid and inert (active) composites of inert (active) maps stay inert
/// (active); associativity for every composable triple.
pub fn category_laws(table: &HomTable) -> LawReport {
    let n = table.n();
    let classes: Vec<Vec<Vec<crate::MapClass>>> = table
        .homs
        .iter()
        .map(|row| {
            row.iter()
                .map(|h| h.iter().map(GraphMap::classify).collect())
                .collect()
        })
        .collect();
    let reports: Vec<LawReport> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut report = LawReport::default();
            for j in 0..n {
                for (fi, f) in table.homs[i][j].iter().enumerate() {
                    let id_src = GraphMap::identity(f.source());
                    let id_dst = GraphMap::identity(f.target());
                    if f.compose_unchecked(&id_src) != *f || id_dst.compose_unchecked(f) != *f {
                        report.violations.push(format!("unit law fails for {f}"));
                    }
                    let fc = classes[i][j][fi];
                    for k in 0..n {
                        for (gi, g) in table.homs[j][k].iter().enumerate() {
                            report.pairs += 1;
                            let gf = match g.compose(f) {
                                Ok(gf) => gf,
                                Err(e) => {
                                    report
                                        .violations
                                        .push(format!("composite of {f} then {g} invalid: {e}"));
                                    continue;
                                }
                            };
                            let gc = classes[j][k][gi];
                            let c = gf.classify();
                            if fc.inert && gc.inert && !c.inert {
                                report
                                    .violations
                                    .push(format!("inert not closed: {f} then {g}"));
                            }
                            if fc.active && gc.active && !c.active {
                                report
                                    .violations
                                    .push(format!("active not closed: {f} then {g}"));
                            }
                            for l in 0..n {
                                for h in &table.homs[k][l] {
                                    report.triples += 1;
                                    let left = h.compose_unchecked(&gf);
                                    let right = h.compose_unchecked(g).compose_unchecked(f);
                                    if left != right {
                                        report
                                            .violations
                                            .push(format!("associativity fails for {f}, {g}, {h}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            report
        })
        .collect();
    reports
        .into_iter()
        .fold(LawReport::default(), LawReport::merge)
}

/// Isomorphisms in each endo-hom-set form a group: closed under composition
/// and every element has an inverse in the set.
pub fn automorphism_groups(table: &HomTable) -> Vec<String> {
    let mut violations = Vec::new();
    for (i, g) in table.graphs.iter().enumerate() {
        let isos: Vec<&GraphMap> = table.homs[i][i]
            .iter()
            .filter(|m| m.classify().is_isomorphism())
            .collect();
        if !isos.contains(&&GraphMap::identity(g)) {
            violations.push(format!("identity missing from Aut of graph {i}"));
        }
        for f in &isos {
            match f.inverse() {
                Some(inv) if isos.contains(&&inv) => {}
                _ => violations.push(format!("no inverse for {f}")),
            }
            for h in &isos {
                let c = h.compose_unchecked(f);
                if !isos.contains(&&c) {
                    violations.push(format!("Aut not closed: {f} then {h}"));
                }
            }
        }
    }
    violations
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorReport {
    pub maps: usize,
    pub violations: Vec<String>,
}

/// For every map: the factorization recomposes, has the right classes, the
/// middle graph does not depend on the numbering order, and factoring
/// either factor returns it with an identity.
pub fn factorization_sweep(table: &HomTable) -> FactorReport {
    let maps: Vec<&GraphMap> = table.all_maps().collect();
    let violations: Vec<String> = maps
        .par_iter()
        .flat_map_iter(|&m| check_factorization(m))
        .collect();
    FactorReport {
        maps: maps.len(),
        violations,
    }
}

fn check_factorization(m: &GraphMap) -> Vec<String> {
    let mut out = Vec::new();
    let f = factorize(m);
    if !f.inert.classify().inert || !f.active.classify().active {
        out.push(format!("factor classes wrong for {m}"));
    }
    match f.active.compose(&f.inert) {
        Ok(c) if c == *m => {}
        _ => out.push(format!("factorization does not recompose for {m}")),
    }
    let forward = factorize_with(m, SearchOrder::Forward);
    let reverse = factorize_with(m, SearchOrder::Reverse);
    for g in [&forward, &reverse] {
        if g.active.compose(&g.inert).ok().as_ref() != Some(m) {
            out.push(format!("general factorization does not recompose for {m}"));
        }
    }
    let key = canonical_encoding(f.middle());
    if canonical_encoding(forward.middle()) != key || canonical_encoding(reverse.middle()) != key {
        out.push(format!("middle graph depends on search order for {m}"));
    }
    let fi = factorize(&f.inert);
    if fi.inert != f.inert || fi.active != GraphMap::identity(f.inert.target()) {
        out.push(format!("re-factoring the inert part of {m} is not trivial"));
    }
    let fa = factorize(&f.active);
    if fa.active != f.active || fa.inert != GraphMap::identity(f.active.source()) {
        out.push(format!(
            "re-factoring the active part of {m} is not trivial"
        ));
    }
    out
}
