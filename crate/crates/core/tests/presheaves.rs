use modop::enumerate::corpus;
use modop::laws::HomTable;
use modop::linear::LinearPresheaf;
use modop::segal::{
    functoriality_sweep, segal_check, Grading, Monoid, MonoidPresheaf, Orientations, PresheafError,
    SetPresheaf, Terminal,
};
use modop::{Elementary, Graph, GraphMap};

/// Orientations, except that every non-invertible map also reverses every
/// edge. Fails functoriality along composites of two such maps.
struct FlippedOrientations;

impl SetPresheaf for FlippedOrientations {
    type Elem = Vec<bool>;

    fn name(&self) -> String {
        "flipped-orientation".into()
    }

    fn elements(&self, g: &Graph, bound: usize) -> Result<Vec<Vec<bool>>, PresheafError> {
        Orientations.elements(g, bound)
    }

    fn act(&self, m: &GraphMap, x: &Vec<bool>) -> Result<Vec<bool>, PresheafError> {
        let y = Orientations.act(m, x)?;
        Ok(if m.classify().is_isomorphism() {
            y
        } else {
            y.into_iter().map(|b| !b).collect()
        })
    }
}

/// One bit on graphs with a cycle, a point on trees. Functorial, but the
/// bit is invisible to corollas and edges.
struct CycleBit;

impl SetPresheaf for CycleBit {
    type Elem = Vec<bool>;

    fn name(&self) -> String {
        "cycle-bit".into()
    }

    fn elements(&self, g: &Graph, _bound: usize) -> Result<Vec<Vec<bool>>, PresheafError> {
        Ok(if g.is_tree() {
            vec![vec![]]
        } else {
            vec![vec![false], vec![true]]
        })
    }

    fn act(&self, m: &GraphMap, x: &Vec<bool>) -> Result<Vec<bool>, PresheafError> {
        match (m.target().is_tree(), x.as_slice()) {
            (true, _) => Ok(vec![]),
            (false, [b]) => Ok(vec![*b]),
            (false, _) => Err(PresheafError::Mismatch(
                "a map from a tree onto a graph with a cycle".into(),
            )),
        }
    }
}

fn table() -> HomTable {
    HomTable::corpus(2, 3).unwrap()
}

#[test]
fn flipped_orientations_are_not_functorial() {
    let t = table();
    let r = functoriality_sweep(&FlippedOrientations, &t, 1 << 10);
    assert!(!r.passed());
    assert!(r.witness.is_some());
    // identities are still respected
    let theta = Graph::elementary(Elementary::Theta);
    let id = GraphMap::identity(&theta);
    for x in FlippedOrientations.elements(&theta, 1 << 10).unwrap() {
        assert_eq!(FlippedOrientations.act(&id, &x).unwrap(), x);
    }
}

#[test]
fn cycle_bit_is_functorial_but_not_segal() {
    let t = table();
    assert!(functoriality_sweep(&CycleBit, &t, 1 << 10).passed());
    let theta = Graph::elementary(Elementary::Theta);
    let r = segal_check(&CycleBit, &theta, 1 << 10).unwrap();
    assert!(!r.is_bijection);
    assert_eq!(r.lhs_size, 2u32.into());
    assert_eq!(r.pullback_size, 1u32.into());
    assert!(r.witness.is_some());
    // trees carry no bit, so nothing fails there
    for g in corpus(3, 4).into_iter().filter(Graph::is_tree) {
        assert!(segal_check(&CycleBit, &g, 1 << 10).unwrap().is_bijection);
    }
}

#[test]
fn standard_presheaves_are_functorial() {
    let t = table();
    let bound = 1 << 10;
    assert!(functoriality_sweep(&Terminal, &t, bound).passed());
    assert!(functoriality_sweep(&Orientations, &t, bound).passed());
    assert!(functoriality_sweep(&Grading { label_bound: 3 }, &t, bound).passed());
    let z2 = MonoidPresheaf {
        monoid: Monoid::cyclic(2),
    };
    assert!(functoriality_sweep(&z2, &t, bound).passed());
    let z3 = MonoidPresheaf {
        monoid: Monoid::cyclic(3),
    };
    assert!(functoriality_sweep(&z3, &t, bound).passed());
}

#[test]
fn linear_presheaf_is_functorial() {
    let t = table();
    let lin = LinearPresheaf::new(2, vec![(1, vec![vec![1]])]).unwrap();
    let r = functoriality_sweep(&lin, &t, 1 << 8);
    assert!(r.passed(), "{:?}", r.witness);
    assert!(r.pairs > 0);
}

#[test]
fn segal_verdict_does_not_depend_on_orientation() {
    let monoid = MonoidPresheaf {
        monoid: Monoid::cyclic(2),
    };
    for g in corpus(2, 3) {
        for o in g.orientations() {
            assert!(
                Orientations
                    .segal_check_oriented(&g, 1 << 10, &o)
                    .unwrap()
                    .is_bijection
            );
            assert!(
                CycleBit
                    .segal_check_oriented(&g, 1 << 10, &o)
                    .unwrap()
                    .is_bijection
                    == g.is_tree()
            );
            assert!(
                monoid
                    .segal_check_oriented(&g, 1 << 10, &o)
                    .unwrap()
                    .is_bijection
            );
        }
    }
}
