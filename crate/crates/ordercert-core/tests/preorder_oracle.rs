//! Brute-force cross-check of the ball-cube value search.
//!
//! Any valid value function is constant on translation orbits, so the full
//! candidate space is the set of `±1` choices per orbit, completed by zero
//! on degenerate triples. This test re-derives the orbits with its own
//! plain union-find, enumerates every candidate, and judges each one with
//! the axiom validator alone — no solver machinery — then compares the
//! existence answer with the search outcome.

use std::collections::BTreeMap;

use ordercert_core::circular::{
    preorder_search, validate_circular_assignment, CircularAssignment, Triple,
};
use ordercert_core::groups::{Element, Group};

fn orbit_representatives(members: &[Element]) -> (Vec<Triple>, BTreeMap<Triple, usize>) {
    let mut triples = Vec::new();
    for a in members {
        for b in members {
            for c in members {
                let t = Triple::new(a.clone(), b.clone(), c.clone()).unwrap();
                if !t.is_degenerate() {
                    triples.push(t);
                }
            }
        }
    }
    let index: BTreeMap<Triple, usize> = triples
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();

    let mut parent: Vec<usize> = (0..triples.len()).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in members {
        for (i, t) in triples.iter().enumerate() {
            let translated = t.translated(g).unwrap();
            if let Some(&j) = index.get(&translated) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut orbit_of = BTreeMap::new();
    let mut orbit_count = 0;
    let mut orbit_id: Vec<Option<usize>> = vec![None; triples.len()];
    for i in 0..triples.len() {
        let root = find(&mut parent, i);
        let id = *orbit_id[root].get_or_insert_with(|| {
            orbit_count += 1;
            orbit_count - 1
        });
        orbit_of.insert(triples[i].clone(), id);
    }
    (triples, orbit_of)
}

fn candidate(members: &[Element], orbit_of: &BTreeMap<Triple, usize>, mask: usize) -> CircularAssignment {
    let mut assignment = CircularAssignment::new();
    for a in members {
        for b in members {
            for c in members {
                let t = Triple::new(a.clone(), b.clone(), c.clone()).unwrap();
                let value = match orbit_of.get(&t) {
                    Some(&orbit) => {
                        if mask & (1 << orbit) != 0 {
                            1
                        } else {
                            -1
                        }
                    }
                    None => 0,
                };
                assignment.insert(t, value);
            }
        }
    }
    assignment
}

fn brute_force_exists(group: &Group, k: u32) -> bool {
    let members: Vec<Element> = group.ball(k).unwrap().iter().cloned().collect();
    let (_, orbit_of) = orbit_representatives(&members);
    let orbit_count = orbit_of.values().max().map_or(0, |m| m + 1);
    assert!(orbit_count <= 12, "oracle only runs on tiny instances");
    for mask in 0..(1usize << orbit_count) {
        let assignment = candidate(&members, &orbit_of, mask);
        if validate_circular_assignment(&assignment, &members)
            .unwrap()
            .passed()
        {
            return true;
        }
    }
    false
}

#[test]
fn search_agrees_with_brute_force_on_twice_two() {
    let c2 = Group::finite_cyclic(2).unwrap();
    let group = Group::direct_product(vec![c2.clone(), c2]).unwrap();
    assert!(!brute_force_exists(&group, 2), "oracle refutes");
    assert!(preorder_search(&group, 2).unwrap().is_impossible());
}

#[test]
fn search_agrees_with_brute_force_on_small_cyclic_groups() {
    for order in [2u32, 3, 4] {
        let group = Group::finite_cyclic(order).unwrap();
        let k = order.div_ceil(2);
        assert!(brute_force_exists(&group, k), "oracle finds one for {order}");
        assert!(preorder_search(&group, k).unwrap().found().is_some());
    }
}
