//! One simulation step: connection search, network evaluation, affinity
//! diffusion, mortality and replacement, then aging.

use crate::error::Error;
use crate::model::{in_band, Params, Profile, ProfileId, Tier, MAX_AGE, MIN_AGE};
use crate::network::Network;
use crate::rng::{Stream, StreamSet};

/// Multiplier on the perception noise for each tier below `Strongest`.
pub const DISTORTION_GROWTH: f64 = 1.1;

/// Counts of everything that happened during one step.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepEvents {
    pub links_created: usize,
    pub promotions: usize,
    pub demotions: usize,
    pub severances: usize,
    pub deaths: Vec<ProfileId>,
    pub replacements: Vec<ProfileId>,
}

/// A noisy reading of another profile's affinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Perception {
    pub observer: ProfileId,
    pub observed: ProfileId,
    /// Tier of the link the perception travels over.
    pub tier: Tier,
    /// Clamped to `[0, 1]`.
    pub perceived_affinity: f64,
}

/// What [`evaluate_network`] did to one profile's out-links.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Evaluation {
    pub promotions: usize,
    pub demotions: usize,
    pub severances: usize,
    /// Perceptions over the links that survived, tagged with the tier each
    /// link holds after evaluation.
    pub perceptions: Vec<Perception>,
}

/// A fresh population with no links.
pub fn initialize(params: &Params, streams: &mut StreamSet) -> Result<Network, Error> {
    params.validate().map_err(Error::InvalidParams)?;
    let rng = &mut streams.init;
    let profiles = (0..params.max_profiles)
        .map(|i| Profile {
            id: ProfileId(i as u64),
            age: rng.uniform(MIN_AGE, MAX_AGE),
            affinity: rng.unit(),
            sensibility: rng.unit(),
            influentiability: rng.unit(),
        })
        .collect();
    Ok(Network::from_profiles(params, profiles)?)
}

/// Standard deviation of the perception noise over a link of `tier`.
pub fn perception_sd(distortion: f64, tier: Tier) -> f64 {
    distortion * DISTORTION_GROWTH.powi(tier.ordinal() as i32)
}

pub fn perceive_affinity(
    observer: &Profile,
    observed: &Profile,
    tier: Tier,
    distortion: f64,
    stream: &mut Stream,
) -> Perception {
    let noisy = stream.normal(observed.affinity, perception_sd(distortion, tier));
    Perception {
        observer: observer.id,
        observed: observed.id,
        tier,
        perceived_affinity: noisy.clamp(0.0, 1.0),
    }
}

/// Looks for new acquaintances among the age-nearest unlinked profiles and
/// links, at `Weakest`, to those perceived within the affinity radius.
/// Returns the target slots of the new links.
pub fn create_connections(
    net: &mut Network,
    slot: usize,
    params: &Params,
    streams: &mut StreamSet,
) -> Vec<usize> {
    let budget = params.max_network.saturating_sub(net.out_degree(slot));
    let weakest_free = net
        .caps()
        .get(Tier::Weakest)
        .saturating_sub(net.tier_count(slot, Tier::Weakest));
    let n = params.creation_batch().min(weakest_free).min(budget);
    if n == 0 {
        return Vec::new();
    }

    let me = net.profile(slot).clone();
    let mut candidates: Vec<(f64, ProfileId, usize)> = (0..net.len())
        .filter(|&c| c != slot && net.link(slot, c).is_none())
        .map(|c| {
            let other = net.profile(c);
            ((other.age - me.age).abs(), other.id, c)
        })
        .collect();
    let by_closeness =
        |a: &(f64, ProfileId, usize), b: &(f64, ProfileId, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    if candidates.len() > n {
        candidates.select_nth_unstable_by(n, by_closeness);
        candidates.truncate(n);
    }
    candidates.sort_unstable_by(by_closeness);

    let mut created = Vec::new();
    for (_, _, target) in candidates {
        let seen = perceive_affinity(
            &me,
            net.profile(target),
            Tier::Weakest,
            params.distortion,
            &mut streams.perception,
        );
        if (seen.perceived_affinity - me.affinity).abs() <= params.aff_radius {
            net.add_link(slot, target, Tier::Weakest)
                .expect("candidate passed capacity checks");
            created.push(target);
        }
    }
    created
}

/// Re-reads every out-link of `slot` and promotes, demotes or severs it.
///
/// A link perceived outside the affinity radius is weakened with probability
/// equal to the owner's sensibility; a weakened `Weakest` link, or one whose
/// lower tier is already full, is severed. A link perceived inside the next
/// stronger tier's band moves up when that tier has room.
pub fn evaluate_network(
    net: &mut Network,
    slot: usize,
    params: &Params,
    streams: &mut StreamSet,
) -> Evaluation {
    let me = net.profile(slot).clone();
    let links: Vec<(usize, Tier)> = net.out_links(slot).collect();
    let mut ev = Evaluation::default();

    for (target, tier) in links {
        let mut seen = perceive_affinity(
            &me,
            net.profile(target),
            tier,
            params.distortion,
            &mut streams.perception,
        );
        let gap = (seen.perceived_affinity - me.affinity).abs();

        if gap > params.aff_radius {
            if streams.rejection.unit() >= me.sensibility {
                ev.perceptions.push(seen);
                continue;
            }
            match tier.weaker() {
                Some(lower) if net.has_room(slot, lower) => {
                    net.retier(slot, target, lower);
                    ev.demotions += 1;
                    seen.tier = lower;
                    ev.perceptions.push(seen);
                }
                _ => {
                    net.remove_link(slot, target);
                    ev.severances += 1;
                }
            }
            continue;
        }

        if let Some(upper) = tier.stronger() {
            if in_band(upper, me.affinity, params.aff_radius, seen.perceived_affinity)
                && net.has_room(slot, upper)
            {
                net.retier(slot, target, upper);
                ev.promotions += 1;
                seen.tier = upper;
            }
        }
        ev.perceptions.push(seen);
    }
    ev
}

/// New affinity of `profile` pulled toward its close ties.
///
/// Neighbours over `Strongest`, `Strong` and `Medium` links weigh 3, 2 and 1;
/// the profile's own affinity weighs as much as all neighbours together. The
/// gap between that weighted mean and the current affinity is scaled by
/// influentiability, capped at `max_change` in magnitude, and the result is
/// clamped to `[0, 1]`. Perceptions over weaker links are ignored.
pub fn update_affinity(profile: &Profile, perceptions: &[Perception], params: &Params) -> f64 {
    let (weight, weighted) = perceptions
        .iter()
        .map(|p| (p.tier.influence_weight(), p.perceived_affinity))
        .filter(|&(w, _)| w > 0.0)
        .fold((0.0, 0.0), |(ws, acc), (w, a)| (ws + w, acc + w * a));
    if weight == 0.0 {
        return profile.affinity;
    }
    let own = profile.affinity;
    let mean = (weight * own + weighted) / (2.0 * weight);
    let raw = mean - own;
    let applied = (profile.influentiability * raw.abs()).min(params.max_change);
    (own + applied.copysign(raw)).clamp(0.0, 1.0)
}

/// Yearly-scale death hazard used by [`mortality`]; increasing in age, in (0, 1).
pub fn hazard(age: f64) -> f64 {
    1.0 - (-age / MAX_AGE).exp()
}

/// Slots of the profiles that die this step.
///
/// Everyone at or past the age ceiling dies outright. Every other profile
/// draws `u`; it is a candidate when `u < hazard(age)`, and the
/// `people_dead` candidates with the smallest `u / hazard(age)` die. The
/// result lists forced deaths first (by slot), then stochastic ones by ratio.
pub fn mortality(net: &Network, params: &Params, streams: &mut StreamSet) -> Vec<usize> {
    let mut dead = Vec::new();
    let mut candidates = Vec::new();
    for (slot, p) in net.profiles().iter().enumerate() {
        if p.age >= MAX_AGE {
            dead.push(slot);
            continue;
        }
        let u = streams.mortality.unit();
        let h = hazard(p.age);
        if u < h {
            candidates.push((u / h, slot));
        }
    }
    candidates.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    dead.extend(candidates.into_iter().take(params.people_dead).map(|(_, s)| s));
    dead
}

/// Swaps each dead profile for a newcomer aged [`MIN_AGE`] with fresh random
/// attributes and no links. Links pointing at the dead are dropped. Slots are
/// refilled in ascending order; returns the new ids in that order.
pub fn replace_agents(net: &mut Network, dead: &[usize], streams: &mut StreamSet) -> Vec<ProfileId> {
    let mut slots = dead.to_vec();
    slots.sort_unstable();
    slots.dedup();
    let rng = &mut streams.replacement;
    slots
        .into_iter()
        .map(|slot| {
            net.isolate(slot);
            let id = net.fresh_id();
            *net.profile_mut(slot) = Profile {
                id,
                age: MIN_AGE,
                affinity: rng.unit(),
                sensibility: rng.unit(),
                influentiability: rng.unit(),
            };
            id
        })
        .collect()
}

/// Advances the network by one step.
pub fn step(net: &mut Network, params: &Params, streams: &mut StreamSet) -> StepEvents {
    let n = net.len();
    let mut events = StepEvents::default();

    for slot in streams.scheduling.permutation(n) {
        events.links_created += create_connections(net, slot, params, streams).len();
    }

    let mut perceptions = vec![Vec::new(); n];
    for slot in streams.scheduling.permutation(n) {
        let ev = evaluate_network(net, slot, params, streams);
        events.promotions += ev.promotions;
        events.demotions += ev.demotions;
        events.severances += ev.severances;
        perceptions[slot] = ev.perceptions;
    }

    // all profiles update from the same pre-update affinities
    let updated: Vec<f64> = (0..n)
        .map(|s| update_affinity(net.profile(s), &perceptions[s], params))
        .collect();
    for (slot, affinity) in updated.into_iter().enumerate() {
        net.profile_mut(slot).affinity = affinity;
    }

    let dead = mortality(net, params, streams);
    events.deaths = dead.iter().map(|&s| net.profile(s).id).collect();
    events.replacements = replace_agents(net, &dead, streams);

    net.advance_clock();
    events
}
