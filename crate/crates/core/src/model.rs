//! Domain types and the static tier arithmetic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::io::real17;

/// Years added to every living profile per step (one step is ten days).
pub const YEARS_PER_STEP: f64 = 10.0 / 365.25;

/// Age at which a profile is removed regardless of the death cap.
pub const MAX_AGE: f64 = 80.0;

/// Age of freshly initialized profiles is drawn from `[MIN_AGE, MAX_AGE)`;
/// replacements are born at exactly `MIN_AGE`.
pub const MIN_AGE: f64 = 10.0;

/// Strength level of a directed link, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Strongest = 0,
    Strong = 1,
    Medium = 2,
    Weak = 3,
    Weakest = 4,
}

impl Tier {
    pub const ALL: [Tier; 5] = [
        Tier::Strongest,
        Tier::Strong,
        Tier::Medium,
        Tier::Weak,
        Tier::Weakest,
    ];

    /// Capacity as a percentage of the personal network cap.
    const CAPACITY_PERCENT: [usize; 5] = [5, 10, 20, 30, 40];

    #[inline]
    pub fn ordinal(self) -> usize {
        self as usize
    }

    pub fn from_ordinal(ordinal: usize) -> Option<Tier> {
        Tier::ALL.get(ordinal).copied()
    }

    pub fn capacity_fraction(self) -> f64 {
        Self::CAPACITY_PERCENT[self.ordinal()] as f64 / 100.0
    }

    /// Fraction of the affinity radius that bounds this tier's band:
    /// 1/5 for `Strongest` up to 5/5 for `Weakest`.
    pub fn band_fraction(self) -> f64 {
        (self.ordinal() + 1) as f64 / 5.0
    }

    /// One level up, or `None` for `Strongest`.
    pub fn stronger(self) -> Option<Tier> {
        self.ordinal().checked_sub(1).and_then(Tier::from_ordinal)
    }

    /// One level down, or `None` for `Weakest`.
    pub fn weaker(self) -> Option<Tier> {
        Tier::from_ordinal(self.ordinal() + 1)
    }

    /// Neighbour weight in the affinity update; zero for tiers that do not
    /// influence (`Weak`, `Weakest`).
    pub fn influence_weight(self) -> f64 {
        match self {
            Tier::Strongest => 3.0,
            Tier::Strong => 2.0,
            Tier::Medium => 1.0,
            Tier::Weak | Tier::Weakest => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Tier::Strongest => "strongest",
            Tier::Strong => "strong",
            Tier::Medium => "medium",
            Tier::Weak => "weak",
            Tier::Weakest => "weakest",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-tier out-link capacity, indexed by [`Tier::ordinal`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TierCaps(pub [usize; 5]);

impl TierCaps {
    #[inline]
    pub fn get(&self, tier: Tier) -> usize {
        self.0[tier.ordinal()]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Capacity of each tier for a personal network cap of `max_network`.
///
/// Each cap is the tier's percentage of `max_network`, rounded to the nearest
/// integer with exact halves going to the even neighbour (so 2.5 becomes 2).
/// The percentages add up to 105%, so the caps may sum above `max_network`;
/// the global out-degree cap is enforced separately when links are created.
pub fn tier_caps(max_network: usize) -> TierCaps {
    let mut caps = [0usize; 5];
    for (cap, &pct) in caps.iter_mut().zip(Tier::CAPACITY_PERCENT.iter()) {
        let scaled = pct * max_network;
        let (q, r) = (scaled / 100, scaled % 100);
        *cap = match (2 * r).cmp(&100) {
            std::cmp::Ordering::Less => q,
            std::cmp::Ordering::Greater => q + 1,
            std::cmp::Ordering::Equal => q + (q & 1),
        };
    }
    TierCaps(caps)
}

/// Closed affinity interval `[lo, hi]` accepted for a link of `tier`.
///
/// Not clipped to `[0, 1]`.
pub fn tier_band(tier: Tier, own_affinity: f64, aff_radius: f64) -> (f64, f64) {
    let half = tier.band_fraction() * aff_radius;
    (own_affinity - half, own_affinity + half)
}

#[inline]
pub(crate) fn in_band(tier: Tier, own_affinity: f64, aff_radius: f64, value: f64) -> bool {
    let (lo, hi) = tier_band(tier, own_affinity, aff_radius);
    lo <= value && value <= hi
}

/// Stable identifier of a profile; never reused within a simulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProfileId(pub u64);

impl fmt::Display for ProfileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One social network account.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub id: ProfileId,
    /// Years.
    pub age: f64,
    pub affinity: f64,
    /// Probability of weakening a link to someone outside the affinity radius.
    pub sensibility: f64,
    /// Fraction of the proposed affinity change that is applied.
    pub influentiability: f64,
}

/// A directed tie between two profiles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Link {
    pub source: ProfileId,
    pub target: ProfileId,
    pub tier: Tier,
}

/// Every model parameter. Field names serialize in the kebab-case used by
/// config files and command-line flags.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct Params {
    pub max_profiles: usize,
    pub max_network: usize,
    #[serde(serialize_with = "real17")]
    pub distortion: f64,
    #[serde(serialize_with = "real17")]
    pub max_change: f64,
    #[serde(serialize_with = "real17")]
    pub aff_radius: f64,
    pub people_dead: usize,
    pub steps: usize,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            max_profiles: 100,
            max_network: 50,
            distortion: 0.05,
            max_change: 0.15,
            aff_radius: 0.2,
            people_dead: 5,
            steps: 1000,
            seed: 0,
        }
    }
}

impl Params {
    pub fn tier_caps(&self) -> TierCaps {
        tier_caps(self.max_network)
    }

    /// Creation looks at no more than this many age-nearest candidates per step.
    pub fn creation_batch(&self) -> usize {
        self.max_network * 3 / 10
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        validate_params(self)
    }
}

/// One broken parameter constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.reason)
    }
}

/// Checks every parameter constraint and reports all that fail.
pub fn validate_params(p: &Params) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let mut bad = |field: &'static str, reason: String| out.push(Violation { field, reason });

    if p.max_profiles == 0 {
        bad("max-profiles", "must be at least 1".into());
    }
    let upper = p.max_profiles.saturating_sub(1);
    // A single-profile population has no one to link to, so 0 is the only legal cap.
    let lower = upper.min(1);
    if p.max_network < lower || p.max_network > upper {
        bad(
            "max-network",
            format!("{} is outside [{lower}, {upper}] (max-profiles - 1)", p.max_network),
        );
    }
    if !(p.distortion >= 0.0 && p.distortion.is_finite()) {
        bad("distortion", format!("{} must be a finite value >= 0", p.distortion));
    }
    if !(0.0..=1.0).contains(&p.max_change) {
        bad("max-change", format!("{} is outside [0, 1]", p.max_change));
    }
    if !(0.0..=1.0).contains(&p.aff_radius) {
        bad("aff-radius", format!("{} is outside [0, 1]", p.aff_radius));
    }
    if p.people_dead > p.max_profiles {
        bad(
            "people-dead",
            format!("{} exceeds max-profiles ({})", p.people_dead, p.max_profiles),
        );
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn caps_at_defaults() {
        assert_eq!(tier_caps(50), TierCaps([2, 5, 10, 15, 20]));
        assert_eq!(tier_caps(0), TierCaps([0; 5]));
    }

    #[test]
    fn caps_round_half_to_even() {
        assert_eq!(tier_caps(99), TierCaps([5, 10, 20, 30, 40]));
        // 0.45, 0.9, 1.8, 2.7, 3.6
        assert_eq!(tier_caps(9), TierCaps([0, 1, 2, 3, 4]));
        // 0.5 -> 0, 1.0, 2.0, 3.0, 4.0
        assert_eq!(tier_caps(10), TierCaps([0, 1, 2, 3, 4]));
        // 1.5 -> 2
        assert_eq!(tier_caps(30).get(Tier::Strongest), 2);
    }

    #[test]
    fn bands() {
        let (lo, hi) = tier_band(Tier::Strongest, 0.5, 0.2);
        assert!((lo - 0.46).abs() < 1e-12 && (hi - 0.54).abs() < 1e-12);
        let (lo, hi) = tier_band(Tier::Weakest, 0.5, 0.2);
        assert!((lo - 0.30).abs() < 1e-12 && (hi - 0.70).abs() < 1e-12);
        assert_eq!(tier_band(Tier::Medium, 0.5, 0.0), (0.5, 0.5));
    }

    #[test]
    fn tier_steps() {
        assert_eq!(Tier::Strongest.stronger(), None);
        assert_eq!(Tier::Weakest.weaker(), None);
        assert_eq!(Tier::Medium.stronger(), Some(Tier::Strong));
        assert_eq!(Tier::Medium.weaker(), Some(Tier::Weak));
        assert!(Tier::Strongest < Tier::Weakest);
    }

    #[test]
    fn default_params_are_valid() {
        assert_eq!(validate_params(&Params::default()), Ok(()));
    }

    #[test]
    fn violations_name_the_field() {
        let p = Params { max_network: 100, ..Params::default() };
        let errs = validate_params(&p).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].field, "max-network");

        let p = Params { aff_radius: -0.1, ..Params::default() };
        assert_eq!(validate_params(&p).unwrap_err()[0].field, "aff-radius");

        let p = Params {
            distortion: f64::NAN,
            max_change: 1.5,
            people_dead: 101,
            ..Params::default()
        };
        let fields: Vec<_> = validate_params(&p).unwrap_err().iter().map(|v| v.field).collect();
        assert_eq!(fields, ["distortion", "max-change", "people-dead"]);
    }

    #[test]
    fn single_profile_population() {
        let p = Params { max_profiles: 1, max_network: 0, people_dead: 0, ..Params::default() };
        assert_eq!(validate_params(&p), Ok(()));
        let p = Params { max_profiles: 1, max_network: 1, people_dead: 0, ..Params::default() };
        assert!(validate_params(&p).is_err());
        let p = Params { max_profiles: 5, max_network: 0, ..Params::default() };
        assert!(validate_params(&p).is_err());
    }

    proptest! {
        #[test]
        fn caps_are_nearest_integer(m in 0usize..10_000) {
            let caps = tier_caps(m);
            for t in Tier::ALL {
                let exact = t.capacity_fraction() * m as f64;
                let cap = caps.get(t);
                prop_assert!(cap <= m);
                prop_assert!((cap as f64 - exact).abs() <= 0.5 + 1e-9);
            }
        }

        #[test]
        fn bands_nest_and_are_symmetric(own in 0.0f64..=1.0, radius in 0.0f64..=1.0) {
            for pair in Tier::ALL.windows(2) {
                let (slo, shi) = tier_band(pair[0], own, radius);
                let (wlo, whi) = tier_band(pair[1], own, radius);
                prop_assert!(wlo <= slo && shi <= whi);
            }
            for t in Tier::ALL {
                let (lo, hi) = tier_band(t, own, radius);
                prop_assert!(((own - lo) - (hi - own)).abs() < 1e-12);
            }
        }
    }
}
