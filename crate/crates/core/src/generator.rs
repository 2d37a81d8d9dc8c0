//! Seeded random causal nets for tests and experimentation.
//!
//! Nets are grown forward from an initial row of conditions: each step
//! fires a fresh event that consumes one or two unconsumed conditions and
//! produces one or two new ones. Every event therefore has a nonempty
//! preset and postset, conditions are consumed at most once, and the flow
//! is acyclic by construction, so the result always validates.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::net::NetDescription;

/// Deterministic random net with at most `max_elements` elements
/// (`max_elements` must be at least 4). Same seed, same net.
pub fn random_net(seed: u64, max_elements: usize) -> NetDescription {
    assert!(max_elements >= 4, "too small for a condition-event-condition net");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut conditions: Vec<String> = Vec::new();
    let mut events: Vec<String> = Vec::new();
    let mut arcs: Vec<(String, String)> = Vec::new();
    let mut frontier: Vec<usize> = Vec::new();
    let mut used = vec![false; 0];

    let initial = rng.random_range(1..=3.min(max_elements - 2));
    for _ in 0..initial {
        let id = conditions.len();
        conditions.push(format!("b{id}"));
        used.push(false);
        frontier.push(id);
    }

    loop {
        let total = conditions.len() + events.len();
        // Room for one event plus at least one fresh condition?
        if total + 2 > max_elements || frontier.is_empty() {
            break;
        }
        if !events.is_empty() && rng.random_bool(0.2) {
            break;
        }
        let pre_size = rng.random_range(1..=2.min(frontier.len()));
        let picks = sample(&mut rng, frontier.len(), pre_size).into_vec();
        let mut pre: Vec<usize> = picks.iter().map(|&k| frontier[k]).collect();
        pre.sort_unstable();
        frontier.retain(|id| !pre.contains(id));
        for &id in &pre {
            used[id] = true;
        }

        let event = format!("e{}", events.len());
        for &id in &pre {
            arcs.push((conditions[id].clone(), event.clone()));
        }
        let room = max_elements - (total + 1);
        let post_size = rng.random_range(1..=2.min(room));
        for _ in 0..post_size {
            let id = conditions.len();
            conditions.push(format!("b{id}"));
            used.push(true);
            frontier.push(id);
            arcs.push((event.clone(), conditions[id].clone()));
        }
        events.push(event);
    }

    if events.is_empty() {
        // Degenerate draw: force one firing so the net is nonempty.
        let b = conditions[0].clone();
        used[0] = true;
        let id = conditions.len();
        conditions.push(format!("b{id}"));
        used.push(true);
        arcs.push((b, "e0".to_string()));
        arcs.push(("e0".to_string(), conditions[id].clone()));
        events.push("e0".to_string());
    }

    // Initial conditions that never fired have no arcs; drop them.
    let conditions = conditions
        .into_iter()
        .enumerate()
        .filter(|(id, _)| used[*id])
        .map(|(_, name)| name)
        .collect();

    NetDescription {
        conditions,
        events,
        arcs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_nets_validate() {
        for seed in 0..200 {
            let desc = random_net(seed, 12);
            let net = desc.validate().unwrap_or_else(|e| {
                panic!("seed {seed} produced an invalid net: {e}")
            });
            assert!(net.len() <= 12);
            // Every event consumes and produces something.
            for i in 0..net.len() {
                if net.kind(i) == crate::net::ElementKind::Event {
                    assert!(!net.preset_at(i).is_empty());
                    assert!(!net.postset_at(i).is_empty());
                }
            }
        }
    }

    #[test]
    fn same_seed_same_net() {
        assert_eq!(random_net(7, 12), random_net(7, 12));
    }

    #[test]
    fn respects_element_bound() {
        for seed in 0..50 {
            let desc = random_net(seed, 8);
            assert!(desc.conditions.len() + desc.events.len() <= 8);
        }
    }
}
