mod common;

use std::collections::BTreeSet;

use common::{diagram_fixtures, fixture, fixture_text};
use spatial_milnor::diagram::{braid_closure, parse, serialize};
use spatial_milnor::graph::{Step, DEFAULT_CYCLE_CAP};
use spatial_milnor::invariants::{
    constituent_links, i_split_obstruction, is_completely_split, lambda_report, mu_bar, summarize, Options,
};
use spatial_milnor::presentation::PresentationBundle;

const BRAIDS: &[(&str, usize, &[i32])] = &[
    ("unknot.sg", 1, &[]),
    ("hopf_pos.sg", 2, &[1, 1]),
    ("hopf_neg.sg", 2, &[-1, -1]),
    ("hopf_unknot.sg", 3, &[1, 1]),
    ("borromean.sg", 3, &[1, -2, 1, -2, 1, -2]),
    ("whitehead.sg", 3, &[1, -2, 1, -2, -2]),
    ("borromean_trefoil.sg", 4, &[1, -2, 1, -2, 1, -2, 3, 3, 3]),
    ("trefoil_hopf.sg", 3, &[1, 1, 1, 2, 2]),
];

#[test]
fn braid_fixtures_are_closures() {
    for (name, strands, word) in BRAIDS {
        let built = braid_closure(*strands, word).unwrap();
        assert_eq!(fixture(name), built, "{name}");
        assert_eq!(parse(&serialize(&built)).unwrap(), built);
    }
}

#[test]
fn fixtures_serialize_canonically() {
    for name in diagram_fixtures() {
        let code = fixture(&name);
        let body: String =
            fixture_text(&name).lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
        assert_eq!(serialize(&code), body, "{name}");
    }
}

#[test]
fn root_relation_is_inverse_surface_element_to_lowest_order() {
    for name in diagram_fixtures() {
        let b = PresentationBundle::resolve(&fixture(&name)).unwrap();
        for (c, root) in b.root_relations() {
            let surface = &b.surface_elements()[c];
            assert_eq!(root.lowest_degree(), surface.lowest_degree(), "{name} color {c}");
            if let Some(d) = surface.lowest_degree() {
                assert_eq!(root.homogeneous_part(d), surface.homogeneous_part(d).neg(), "{name} color {c}");
            }
        }
    }
}

#[test]
fn arc_meridians_share_their_base_lowest_term() {
    for name in diagram_fixtures() {
        let code = fixture(&name);
        let b = PresentationBundle::resolve(&code).unwrap();
        let arcs: usize = code.graph().edges().map(|e| code.arc_count(e.id)).sum();
        assert_eq!(b.arc_meridians().count(), arcs, "{name}");
        for (arc, s) in b.arc_meridians() {
            assert!(s.constant_term() == 1.into(), "{name} {arc:?}");
            assert_eq!(s.homogeneous_part(1), b.base_meridian(arc.edge).homogeneous_part(1), "{name} {arc:?}");
        }
    }
}

#[test]
fn longitude_lowest_part_ignores_start_point() {
    for name in diagram_fixtures() {
        let code = fixture(&name);
        let g = code.graph();
        let b = PresentationBundle::resolve(&code).unwrap();
        for c in g.colors() {
            let tree = b.tree(c).unwrap();
            for &e in &tree.non_tree {
                let mut walk = vec![Step { edge: e, forward: true }];
                walk.extend(g.tree_path(tree, e).unwrap());
                let base = b.walk_longitude(&code, &walk).unwrap().without_color(c);
                for k in 1..walk.len() {
                    walk.rotate_left(1);
                    let l = b.walk_longitude(&code, &walk).unwrap().without_color(c);
                    assert_eq!(l.lowest_degree(), base.lowest_degree(), "{name} edge {e} shift {k}");
                    if let Some(d) = base.lowest_degree() {
                        assert_eq!(l.homogeneous_part(d), base.homogeneous_part(d), "{name} edge {e} shift {k}");
                    }
                }
            }
        }
    }
}

#[test]
fn deleting_a_component_of_an_unlinked_pair_keeps_it_trivial() {
    for name in ["hopf_unknot.sg", "whitehead.sg"] {
        let code = fixture(name);
        for c in code.graph().colors() {
            let rest = code.delete_component(c).unwrap();
            assert_eq!(rest.num_colors(), code.num_colors() - 1);
            assert_eq!(rest.graph().colors(), (1..=rest.num_colors() as u32).collect::<Vec<_>>());
            if name == "whitehead.sg" {
                assert!(mu_bar(&rest).unwrap().trivial(), "{name} minus {c}");
            }
        }
    }
}

#[test]
fn hopf_unknot_sublinks() {
    let code = fixture("hopf_unknot.sg");
    let m = mu_bar(&code).unwrap();
    assert_eq!(m.first_length(), Some(2));
    assert!(mu_bar(&code.delete_component(3).unwrap()).unwrap().coefficient(&[1, 2]) != 0.into());
    assert!(mu_bar(&code.delete_component(1).unwrap()).unwrap().trivial());
}

#[test]
fn split_diagrams_have_no_obstruction_and_no_lambda() {
    let opts = Options::default();
    for name in diagram_fixtures() {
        let s = summarize(&fixture(&name), &opts).unwrap();
        if s.completely_split {
            assert!(s.witness.is_none(), "{name}");
            assert!(s.obstructed.values().all(|o| !o), "{name}");
            assert!(s.lambda.values().all(|e| e.relators.is_none() && e.links.is_none()), "{name}");
        } else {
            assert!(s.witness.is_some(), "{name}");
        }
    }
}

#[test]
fn expected_split_verdicts() {
    let opts = Options::default();
    let split = [
        "unknot.sg",
        "whitehead.sg",
        "split_theta_k4.sg",
        "theta_ring_root_over.sg",
        "theta_ring_root_under.sg",
        "theta_ring_leaf_over.sg",
        "theta_ring_leaf_under.sg",
    ];
    for name in diagram_fixtures() {
        let s = is_completely_split(&fixture(&name), &opts).unwrap();
        assert_eq!(s.completely_split, split.contains(&name.as_str()), "{name}");
    }
}

#[test]
fn obstruction_witness_names_a_relator() {
    let code = fixture("borromean_theta.sg");
    let b = PresentationBundle::resolve(&code).unwrap();
    let rel = b.relators();
    for c in 1..=3 {
        let r = i_split_obstruction(&rel, c);
        assert!(r.obstructed, "color {c}");
        let (label, m, coeff) = r.witness.unwrap();
        assert!(rel.iter().any(|x| x.label == label && x.series.coefficient(&m) == coeff));
        assert!(m.contains_color(c));
    }
}

#[test]
fn borromean_theta_lambda() {
    let l = lambda_report(&fixture("borromean_theta.sg"), &Options::default()).unwrap();
    for c in 1..=3 {
        assert_eq!(l.values[&c].relators, Some(3), "color {c}");
        assert_eq!(l.values[&c].links, Some(3), "color {c}");
    }
}

#[test]
fn crossing_changes_keep_graph_and_invert() {
    for name in diagram_fixtures() {
        let code = fixture(&name);
        for c in code.self_crossings() {
            let once = code.crossing_change(c).unwrap();
            assert_eq!(once.graph(), code.graph(), "{name} X{c}");
            assert_eq!(once.crossing_change(c).unwrap(), code, "{name} X{c}");
        }
    }
}

#[test]
fn sublinks_of_fixtures() {
    for name in diagram_fixtures() {
        let code = fixture(&name);
        let sels = code.graph().constituent_selections(None, DEFAULT_CYCLE_CAP).unwrap();
        for s in &sels {
            let l = code.extract_sublink(s).unwrap();
            assert!(l.is_link(), "{name}");
            let colors: BTreeSet<u32> = l.graph().colors().into_iter().collect();
            assert_eq!(colors, s.support(), "{name}");
            for (c, cycle) in s.cycles() {
                let e = l.graph().edges_of(*c).next().unwrap();
                assert_eq!(e.id, *cycle.edges().iter().next().unwrap());
            }
        }
    }
}

#[test]
fn parallel_and_serial_agree() {
    let serial = Options::default();
    let parallel = Options { parallel: true, ..Options::default() };
    for name in diagram_fixtures() {
        let code = fixture(&name);
        assert_eq!(constituent_links(&code, &serial).unwrap(), constituent_links(&code, &parallel).unwrap(), "{name}");
        let (a, b) = (is_completely_split(&code, &serial).unwrap(), is_completely_split(&code, &parallel).unwrap());
        assert_eq!(a.completely_split, b.completely_split, "{name}");
        assert_eq!(a.witness, b.witness, "{name}");
    }
}

#[test]
fn truncation_below_components_is_flagged() {
    let opts = Options { max_degree: Some(2), ..Options::default() };
    let l = lambda_report(&fixture("borromean.sg"), &opts).unwrap();
    assert!(!l.exact);
    assert_eq!(l.values[&1].relators, None);
}
