use modop::canon::canonical_encoding;
use modop::hom::enumerate_maps;
use modop::laws::{automorphism_groups, category_laws, factorization_sweep, HomTable};
use modop::{Graph, MapFilter};

#[test]
fn category_laws_hold_on_corpus() {
    let table = HomTable::corpus(2, 3).unwrap();
    let report = category_laws(&table);
    assert!(report.pairs > 0 && report.triples > 0);
    assert!(
        report.violations.is_empty(),
        "{:?}",
        &report.violations[..report.violations.len().min(5)]
    );
    assert!(automorphism_groups(&table).is_empty());
}

#[test]
fn factorization_holds_on_corpus() {
    let table = HomTable::corpus(2, 3).unwrap();
    let report = factorization_sweep(&table);
    assert_eq!(report.maps, table.map_count());
    assert!(
        report.violations.is_empty(),
        "{:?}",
        &report.violations[..report.violations.len().min(5)]
    );
}

#[test]
fn isomorphisms_are_exactly_the_invertible_maps() {
    let table = HomTable::corpus(2, 3).unwrap();
    for m in table.all_maps() {
        let c = m.classify();
        assert_eq!(c.is_isomorphism(), m.inverse().is_some(), "{m}");
    }
}

#[test]
fn automorphisms_of_edge_are_c2() {
    let maps = enumerate_maps(&Graph::edge(), &Graph::edge(), MapFilter::All).unwrap();
    assert_eq!(maps.len(), 2);
    let swap = &maps[0].compose(&maps[1]).unwrap();
    assert!(maps.contains(swap));
}

#[test]
fn hom_sets_between_isomorphic_graphs_agree_in_size() {
    let table = HomTable::corpus(2, 3).unwrap();
    for (i, g) in table.graphs.iter().enumerate() {
        let (h, _) = modop::canon::canonical_graph(g, None);
        assert_eq!(canonical_encoding(&h), canonical_encoding(g));
        let n = enumerate_maps(&h, &h, MapFilter::All).unwrap().len();
        assert_eq!(n, table.homs[i][i].len());
    }
}
