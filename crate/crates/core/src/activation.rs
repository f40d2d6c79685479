//! Spreading activation over the graph, used as working memory.
//!
//! A tick reads a frozen copy of the current levels and writes the next ones:
//! every active node hands `spread_factor` of its level out along its valid
//! outgoing edges (split evenly per edge) and keeps the rest, then every level
//! decays, is clamped to `[0, 1]`, and is dropped below the floor. Taxonomy
//! edges point from child to parent, so activation only climbs the hierarchy.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::substrate::{Direction, Graph, NodeId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ActivationError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("stimulation amount {0} outside (0, 1]")]
    InvalidAmount(f64),
    #[error("parameter `{name}` = {value} out of range")]
    InvalidParam { name: &'static str, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActivationParams {
    decay: f64,
    spread_factor: f64,
    floor: f64,
    working_threshold: f64,
}

impl Default for ActivationParams {
    fn default() -> Self {
        ActivationParams { decay: 0.8, spread_factor: 0.5, floor: 0.01, working_threshold: 0.1 }
    }
}

impl ActivationParams {
    pub fn new(decay: f64, spread_factor: f64, floor: f64, working_threshold: f64) -> Result<Self, ActivationError> {
        let check = |name, value: f64, ok: bool| if ok { Ok(()) } else { Err(ActivationError::InvalidParam { name, value }) };
        check("decay", decay, decay > 0.0 && decay < 1.0)?;
        check("spread_factor", spread_factor, (0.0..1.0).contains(&spread_factor))?;
        check("floor", floor, (0.0..=1.0).contains(&floor))?;
        check("working_threshold", working_threshold, (0.0..=1.0).contains(&working_threshold))?;
        Ok(ActivationParams { decay, spread_factor, floor, working_threshold })
    }

    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn spread_factor(&self) -> f64 {
        self.spread_factor
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn working_threshold(&self) -> f64 {
        self.working_threshold
    }
}

#[derive(Debug, Clone, Default)]
pub struct ActivationState {
    levels: BTreeMap<NodeId, f64>,
    last_stimulated: BTreeMap<NodeId, u64>,
    tick: u64,
    params: ActivationParams,
}

impl ActivationState {
    pub fn new(params: ActivationParams) -> Self {
        ActivationState { params, ..Default::default() }
    }

    pub fn params(&self) -> &ActivationParams {
        &self.params
    }

    pub fn tick_count(&self) -> u64 {
        self.tick
    }

    pub fn level(&self, node: NodeId) -> f64 {
        self.levels.get(&node).copied().unwrap_or(0.0)
    }

    pub fn last_stimulated(&self, node: NodeId) -> Option<u64> {
        self.last_stimulated.get(&node).copied()
    }

    /// Active nodes in id order.
    pub fn levels(&self) -> impl Iterator<Item = (NodeId, f64)> + '_ {
        self.levels.iter().map(|(n, l)| (*n, *l))
    }

    pub fn total(&self) -> f64 {
        self.levels.values().sum()
    }

    pub fn stimulate(&mut self, graph: &Graph, node: NodeId, amount: f64) -> Result<(), ActivationError> {
        if !graph.contains_node(node) {
            return Err(ActivationError::UnknownNode(node));
        }
        if !(amount > 0.0 && amount <= 1.0) {
            return Err(ActivationError::InvalidAmount(amount));
        }
        let level = self.levels.entry(node).or_insert(0.0);
        *level = (*level + amount).min(1.0);
        self.last_stimulated.insert(node, self.tick);
        Ok(())
    }

    pub fn tick(&mut self, graph: &Graph) {
        let p = self.params;
        let mut next: BTreeMap<NodeId, f64> = BTreeMap::new();
        for (&node, &level) in &self.levels {
            let targets: Vec<NodeId> = graph.incident(node, None, Direction::Out).filter(|e| e.valid).map(|e| e.dst).collect();
            if targets.is_empty() {
                *next.entry(node).or_insert(0.0) += level;
                continue;
            }
            let share = p.spread_factor * level / targets.len() as f64;
            *next.entry(node).or_insert(0.0) += level * (1.0 - p.spread_factor);
            for t in targets {
                *next.entry(t).or_insert(0.0) += share;
            }
        }
        next.retain(|_, level| {
            *level = (*level * p.decay).clamp(0.0, 1.0);
            *level >= p.floor && *level > 0.0
        });
        self.levels = next;
        self.tick += 1;
    }

    /// Nodes at or above the threshold, most active first. Ties go to the more
    /// recently stimulated node, then the lower id.
    pub fn working_set(&self, k: Option<usize>, threshold: Option<f64>) -> Vec<(NodeId, f64)> {
        let theta = threshold.unwrap_or(self.params.working_threshold);
        let mut out: Vec<(NodeId, f64)> = self.levels.iter().filter(|(_, l)| **l >= theta).map(|(n, l)| (*n, *l)).collect();
        out.sort_by(|a, b| self.rank(*a, *b));
        if let Some(k) = k {
            out.truncate(k);
        }
        out
    }

    /// Ordering used by [`working_set`](Self::working_set).
    pub fn rank(&self, a: (NodeId, f64), b: (NodeId, f64)) -> Ordering {
        b.1.total_cmp(&a.1).then_with(|| self.last_stimulated(b.0).cmp(&self.last_stimulated(a.0))).then_with(|| a.0.cmp(&b.0))
    }

    /// Clears all levels. The tick counter keeps running.
    pub fn reset(&mut self) {
        self.levels.clear();
        self.last_stimulated.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substrate::{NodeKind, Polarity, Rel};
    use alloc::vec;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn stimulate_and_saturate() {
        let mut g = Graph::new();
        let n = g.add_node(NodeKind::Entity, "n", None).unwrap();
        let mut s = ActivationState::default();
        s.stimulate(&g, n, 1.0).unwrap();
        assert_eq!(s.level(n), 1.0);
        let mut s = ActivationState::default();
        s.stimulate(&g, n, 0.6).unwrap();
        s.stimulate(&g, n, 0.6).unwrap();
        assert_eq!(s.level(n), 1.0);
    }

    #[test]
    fn stimulate_rejects_bad_input() {
        let g = Graph::new();
        let mut s = ActivationState::default();
        assert_eq!(s.stimulate(&g, NodeId(0), 1.0), Err(ActivationError::UnknownNode(NodeId(0))));
        let mut g = Graph::new();
        let n = g.add_node(NodeKind::Entity, "n", None).unwrap();
        assert_eq!(s.stimulate(&g, n, 0.0), Err(ActivationError::InvalidAmount(0.0)));
        assert_eq!(s.stimulate(&g, n, 1.1), Err(ActivationError::InvalidAmount(1.1)));
    }

    #[test]
    fn isolated_node_decays() {
        let mut g = Graph::new();
        let n = g.add_node(NodeKind::Entity, "n", None).unwrap();
        let mut s = ActivationState::default();
        s.stimulate(&g, n, 1.0).unwrap();
        s.tick(&g);
        assert!(close(s.level(n), 0.8));
        s.tick(&g);
        s.tick(&g);
        assert!(close(s.level(n), 0.512));
    }

    #[test]
    fn one_edge_spreads_half() {
        let mut g = Graph::new();
        let n = g.add_node(NodeKind::Entity, "n", None).unwrap();
        let m = g.add_node(NodeKind::Concept, "m", None).unwrap();
        let r = g.rel("likes");
        g.add_edge(n, r, m, Polarity::Affirm, 1.0, 0).unwrap();
        let mut s = ActivationState::default();
        s.stimulate(&g, n, 1.0).unwrap();
        s.tick(&g);
        assert!(close(s.level(n), 0.4));
        assert!(close(s.level(m), 0.4));
    }

    #[test]
    fn invalid_edges_do_not_conduct() {
        let mut g = Graph::new();
        let n = g.add_node(NodeKind::Entity, "n", None).unwrap();
        let m = g.add_node(NodeKind::Concept, "m", None).unwrap();
        let e = g.add_edge(n, Rel::INSTANCE_OF, m, Polarity::Affirm, 1.0, 0).unwrap();
        g.invalidate_edge(e, 1).unwrap();
        let mut s = ActivationState::default();
        s.stimulate(&g, n, 1.0).unwrap();
        s.tick(&g);
        assert_eq!(s.level(m), 0.0);
        assert!(close(s.level(n), 0.8));
    }

    #[test]
    fn empty_tick_only_counts() {
        let g = Graph::new();
        let mut s = ActivationState::default();
        s.tick(&g);
        assert_eq!(s.tick_count(), 1);
        assert_eq!(s.total(), 0.0);
    }

    #[test]
    fn working_set_order() {
        let mut g = Graph::new();
        let tina = g.add_node(NodeKind::Entity, "Tina", None).unwrap();
        let rover = g.add_node(NodeKind::Entity, "Rover", None).unwrap();
        let mut s = ActivationState::default();
        assert!(s.working_set(None, None).is_empty());
        s.stimulate(&g, tina, 1.0).unwrap();
        s.tick(&g);
        s.stimulate(&g, rover, 1.0).unwrap();
        let ws = s.working_set(None, None);
        assert_eq!(ws.iter().map(|(n, _)| *n).collect::<Vec<_>>(), vec![rover, tina]);
    }

    #[test]
    fn working_set_ties() {
        let mut g = Graph::new();
        let a = g.add_node(NodeKind::Entity, "a", None).unwrap();
        let b = g.add_node(NodeKind::Entity, "b", None).unwrap();
        let c = g.add_node(NodeKind::Entity, "c", None).unwrap();
        let mut s = ActivationState::default();
        s.stimulate(&g, c, 0.5).unwrap();
        s.stimulate(&g, b, 0.5).unwrap();
        s.tick(&g);
        s.stimulate(&g, a, 0.4).unwrap();
        let ws = s.working_set(None, None);
        // a is more recent at equal level.
        assert_eq!(ws.iter().map(|(n, _)| *n).collect::<Vec<_>>(), vec![a, b, c]);
        assert_eq!(s.working_set(Some(1), None).len(), 1);
        assert!(s.working_set(None, Some(0.5)).is_empty());
    }

    #[test]
    fn reset_clears_levels_keeps_tick() {
        let mut g = Graph::new();
        let a = g.add_node(NodeKind::Entity, "a", None).unwrap();
        let mut s = ActivationState::default();
        s.stimulate(&g, a, 1.0).unwrap();
        s.tick(&g);
        s.reset();
        assert!(s.working_set(None, None).is_empty());
        assert_eq!(s.tick_count(), 1);
        s.reset();
        assert_eq!(s.tick_count(), 1);
    }

    #[test]
    fn params_validated() {
        assert!(ActivationParams::new(1.0, 0.5, 0.01, 0.1).is_err());
        assert!(ActivationParams::new(0.8, 1.0, 0.01, 0.1).is_err());
        assert!(ActivationParams::new(0.8, 0.0, 0.01, 0.1).is_ok());
    }
}
