//! The simulation state: a fixed-size population and its tiered directed
//! adjacency.
//!
//! Profiles live in slots `0..max_profiles`. A dead profile's slot is reused
//! by its replacement, which carries a fresh [`ProfileId`]; adjacency is keyed
//! by slot and only ever refers to living profiles.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::model::{Link, Params, Profile, ProfileId, Tier, TierCaps, MAX_AGE, YEARS_PER_STEP};

#[derive(Debug, Error, PartialEq)]
pub enum NetworkError {
    #[error("expected {expected} profiles, got {got}")]
    PopulationSize { expected: usize, got: usize },
    #[error("duplicate profile id {0}")]
    DuplicateId(ProfileId),
    #[error("profile {id}: {field} = {value} is out of range")]
    ProfileRange { id: ProfileId, field: &'static str, value: f64 },
    #[error("slot {0} does not exist")]
    NoSuchSlot(usize),
    #[error("a profile cannot link to itself (slot {0})")]
    SelfLink(usize),
    #[error("link {0} -> {1} already exists")]
    DuplicateLink(usize, usize),
    #[error("slot {slot} has no free {tier} slot")]
    TierFull { slot: usize, tier: Tier },
    #[error("slot {0} is at its personal network cap")]
    NetworkFull(usize),
}

#[derive(Clone, Debug)]
pub struct Network {
    profiles: Vec<Profile>,
    out: Vec<BTreeMap<usize, Tier>>,
    inc: Vec<BTreeSet<usize>>,
    tier_counts: Vec<[usize; 5]>,
    caps: TierCaps,
    max_network: usize,
    step_index: u64,
    next_id: u64,
}

impl Network {
    /// A link-free network over `profiles`, which must number exactly
    /// `params.max_profiles` and carry unique ids and in-range attributes.
    pub fn from_profiles(params: &Params, profiles: Vec<Profile>) -> Result<Self, NetworkError> {
        if profiles.len() != params.max_profiles {
            return Err(NetworkError::PopulationSize {
                expected: params.max_profiles,
                got: profiles.len(),
            });
        }
        let mut ids = HashSet::with_capacity(profiles.len());
        for p in &profiles {
            if !ids.insert(p.id) {
                return Err(NetworkError::DuplicateId(p.id));
            }
            let unit = |field, value: f64| {
                if (0.0..=1.0).contains(&value) {
                    Ok(())
                } else {
                    Err(NetworkError::ProfileRange { id: p.id, field, value })
                }
            };
            unit("affinity", p.affinity)?;
            unit("sensibility", p.sensibility)?;
            unit("influentiability", p.influentiability)?;
            if !(p.age >= 0.0 && p.age.is_finite()) {
                return Err(NetworkError::ProfileRange { id: p.id, field: "age", value: p.age });
            }
        }
        let next_id = profiles.iter().map(|p| p.id.0 + 1).max().unwrap_or(0);
        let n = profiles.len();
        Ok(Network {
            profiles,
            out: vec![BTreeMap::new(); n],
            inc: vec![BTreeSet::new(); n],
            tier_counts: vec![[0; 5]; n],
            caps: params.tier_caps(),
            max_network: params.max_network,
            step_index: 0,
            next_id,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }

    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    #[inline]
    pub fn profile(&self, slot: usize) -> &Profile {
        &self.profiles[slot]
    }

    pub(crate) fn profile_mut(&mut self, slot: usize) -> &mut Profile {
        &mut self.profiles[slot]
    }

    pub fn slot_of(&self, id: ProfileId) -> Option<usize> {
        self.profiles.iter().position(|p| p.id == id)
    }

    pub fn caps(&self) -> TierCaps {
        self.caps
    }

    pub fn max_network(&self) -> usize {
        self.max_network
    }

    pub fn step_index(&self) -> u64 {
        self.step_index
    }

    #[inline]
    pub fn link(&self, source: usize, target: usize) -> Option<Tier> {
        self.out[source].get(&target).copied()
    }

    /// Out-links of `slot` in ascending target-slot order.
    pub fn out_links(&self, slot: usize) -> impl Iterator<Item = (usize, Tier)> + '_ {
        self.out[slot].iter().map(|(&t, &tier)| (t, tier))
    }

    /// Sources of links pointing at `slot`, ascending.
    pub fn in_links(&self, slot: usize) -> impl Iterator<Item = usize> + '_ {
        self.inc[slot].iter().copied()
    }

    #[inline]
    pub fn out_degree(&self, slot: usize) -> usize {
        self.out[slot].len()
    }

    pub fn in_degree(&self, slot: usize) -> usize {
        self.inc[slot].len()
    }

    #[inline]
    pub fn tier_count(&self, slot: usize, tier: Tier) -> usize {
        self.tier_counts[slot][tier.ordinal()]
    }

    #[inline]
    pub fn has_room(&self, slot: usize, tier: Tier) -> bool {
        self.tier_count(slot, tier) < self.caps.get(tier)
    }

    pub fn link_count(&self) -> usize {
        self.out.iter().map(BTreeMap::len).sum()
    }

    /// Every link as `(source slot, target slot, tier)`, ordered by source then target.
    pub fn links(&self) -> impl Iterator<Item = (usize, usize, Tier)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(s, m)| m.iter().map(move |(&t, &tier)| (s, t, tier)))
    }

    pub fn edge_list(&self) -> Vec<Link> {
        self.links()
            .map(|(s, t, tier)| Link {
                source: self.profiles[s].id,
                target: self.profiles[t].id,
                tier,
            })
            .collect()
    }

    /// Adds a link after checking every adjacency invariant.
    pub fn add_link(&mut self, source: usize, target: usize, tier: Tier) -> Result<(), NetworkError> {
        let n = self.len();
        for s in [source, target] {
            if s >= n {
                return Err(NetworkError::NoSuchSlot(s));
            }
        }
        if source == target {
            return Err(NetworkError::SelfLink(source));
        }
        if self.out[source].contains_key(&target) {
            return Err(NetworkError::DuplicateLink(source, target));
        }
        if self.out_degree(source) >= self.max_network {
            return Err(NetworkError::NetworkFull(source));
        }
        if !self.has_room(source, tier) {
            return Err(NetworkError::TierFull { slot: source, tier });
        }
        self.insert_unchecked(source, target, tier);
        Ok(())
    }

    fn insert_unchecked(&mut self, source: usize, target: usize, tier: Tier) {
        self.out[source].insert(target, tier);
        self.inc[target].insert(source);
        self.tier_counts[source][tier.ordinal()] += 1;
    }

    pub fn remove_link(&mut self, source: usize, target: usize) -> Option<Tier> {
        let tier = self.out[source].remove(&target)?;
        self.inc[target].remove(&source);
        self.tier_counts[source][tier.ordinal()] -= 1;
        Some(tier)
    }

    /// Moves an existing link to `tier`. The caller guarantees room.
    pub(crate) fn retier(&mut self, source: usize, target: usize, tier: Tier) {
        let slot = self.out[source].get_mut(&target).expect("retier of a missing link");
        let old = std::mem::replace(slot, tier);
        self.tier_counts[source][old.ordinal()] -= 1;
        self.tier_counts[source][tier.ordinal()] += 1;
        debug_assert!(self.tier_counts[source][tier.ordinal()] <= self.caps.get(tier));
    }

    /// Drops every link into or out of `slot`; returns how many went.
    pub(crate) fn isolate(&mut self, slot: usize) -> usize {
        let sources: Vec<usize> = self.inc[slot].iter().copied().collect();
        let targets: Vec<usize> = self.out[slot].keys().copied().collect();
        for &s in &sources {
            self.remove_link(s, slot);
        }
        for &t in &targets {
            self.remove_link(slot, t);
        }
        sources.len() + targets.len()
    }

    pub(crate) fn fresh_id(&mut self) -> ProfileId {
        let id = ProfileId(self.next_id);
        self.next_id += 1;
        id
    }

    pub(crate) fn advance_clock(&mut self) {
        for p in &mut self.profiles {
            p.age += YEARS_PER_STEP;
        }
        self.step_index += 1;
    }

    /// Lists every broken state invariant; empty when the network is sound.
    pub fn audit(&self, params: &Params) -> Vec<String> {
        let mut problems = Vec::new();
        if self.len() != params.max_profiles {
            problems.push(format!("population {} != {}", self.len(), params.max_profiles));
        }
        let mut ids = HashSet::new();
        for (slot, p) in self.profiles.iter().enumerate() {
            if !ids.insert(p.id) {
                problems.push(format!("slot {slot}: duplicate id {}", p.id));
            }
            if !(0.0..=1.0).contains(&p.affinity) {
                problems.push(format!("slot {slot}: affinity {} outside [0, 1]", p.affinity));
            }
            if p.age >= MAX_AGE + YEARS_PER_STEP {
                problems.push(format!("slot {slot}: age {} survived past the ceiling", p.age));
            }
            if self.out_degree(slot) > self.max_network {
                problems.push(format!("slot {slot}: out-degree {} over cap", self.out_degree(slot)));
            }
            let mut counted = [0usize; 5];
            for (&t, &tier) in &self.out[slot] {
                counted[tier.ordinal()] += 1;
                if t == slot || t >= self.len() {
                    problems.push(format!("slot {slot}: bad target {t}"));
                } else if !self.inc[t].contains(&slot) {
                    problems.push(format!("link {slot}->{t} missing from reverse index"));
                }
            }
            if counted != self.tier_counts[slot] {
                problems.push(format!("slot {slot}: stale tier counts"));
            }
            for tier in Tier::ALL {
                if counted[tier.ordinal()] > self.caps.get(tier) {
                    problems.push(format!("slot {slot}: {tier} count over cap"));
                }
            }
            for &s in &self.inc[slot] {
                if !self.out[s].contains_key(&slot) {
                    problems.push(format!("reverse entry {s}->{slot} has no link"));
                }
            }
        }
        problems
    }
}
