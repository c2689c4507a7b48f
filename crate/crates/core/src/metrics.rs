//! Graph and population statistics over a network snapshot.

use serde::Serialize;
use thiserror::Error;

use crate::io::real17;
use crate::model::Tier;
use crate::network::Network;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("statistic is undefined on an empty network")]
    EmptyNetwork,
}

/// Everything observed about the network after one step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsRow {
    pub step: u64,
    #[serde(serialize_with = "real17")]
    pub density: f64,
    #[serde(serialize_with = "real17")]
    pub mean_net_size: f64,
    #[serde(serialize_with = "real17")]
    pub clustering: f64,
    #[serde(serialize_with = "real17")]
    pub mean_affinity: f64,
    #[serde(serialize_with = "real17")]
    pub std_affinity: f64,
    pub low_outliers: usize,
    pub high_outliers: usize,
    /// Strongest first.
    pub tier_counts: [usize; 5],
}

impl MetricsRow {
    pub fn observe(net: &Network) -> Result<Self, MetricsError> {
        let (mean_affinity, std_affinity) = affinity_stats(net)?;
        let (low_outliers, high_outliers) = outlier_counts(net, net.max_network());
        Ok(MetricsRow {
            step: net.step_index(),
            density: network_density(net),
            mean_net_size: mean_personal_network_size(net)?,
            clustering: clustering_coefficient(net),
            mean_affinity,
            std_affinity,
            low_outliers,
            high_outliers,
            tier_counts: link_tier_counts(net),
        })
    }
}

/// Directed links over the `N(N-1)` possible; 0 below two profiles.
pub fn network_density(net: &Network) -> f64 {
    let n = net.len();
    if n < 2 {
        return 0.0;
    }
    net.link_count() as f64 / (n * (n - 1)) as f64
}

pub fn mean_personal_network_size(net: &Network) -> Result<f64, MetricsError> {
    if net.is_empty() {
        return Err(MetricsError::EmptyNetwork);
    }
    Ok(net.link_count() as f64 / net.len() as f64)
}

/// Undirected neighbourhoods as packed bit rows, `words` u64s per node.
struct Projection {
    words: usize,
    bits: Vec<u64>,
}

impl Projection {
    fn new(net: &Network) -> Self {
        let n = net.len();
        let words = n.div_ceil(64).max(1);
        let mut bits = vec![0u64; n * words];
        for (s, t, _) in net.links() {
            bits[s * words + t / 64] |= 1 << (t % 64);
            bits[t * words + s / 64] |= 1 << (s % 64);
        }
        Projection { words, bits }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Mean local clustering over the undirected projection (an edge wherever a
/// link exists in either direction). Nodes of degree below two count as 0.
pub fn clustering_coefficient(net: &Network) -> f64 {
    let n = net.len();
    if n == 0 {
        return 0.0;
    }
    let g = Projection::new(net);
    let mut total = 0.0;
    for i in 0..n {
        let row = g.row(i);
        let k = row.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        if k < 2 {
            continue;
        }
        let twice_edges: u64 = g
            .neighbours(i)
            .map(|j| {
                g.row(j)
                    .iter()
                    .zip(row)
                    .map(|(a, b)| (a & b).count_ones() as u64)
                    .sum::<u64>()
            })
            .sum();
        total += twice_edges as f64 / (k * (k - 1)) as f64;
    }
    total / n as f64
}

/// Profiles whose out-degree is at most 10% (low) or at least 70% (high) of
/// `max_network`, both bounds inclusive.
pub fn outlier_counts(net: &Network, max_network: usize) -> (usize, usize) {
    (0..net.len()).fold((0, 0), |(low, high), s| {
        let d = net.out_degree(s);
        (
            low + usize::from(10 * d <= max_network),
            high + usize::from(10 * d >= 7 * max_network),
        )
    })
}

/// Population mean and standard deviation of affinity.
pub fn affinity_stats(net: &Network) -> Result<(f64, f64), MetricsError> {
    if net.is_empty() {
        return Err(MetricsError::EmptyNetwork);
    }
    let n = net.len() as f64;
    let mean = net.profiles().iter().map(|p| p.affinity).sum::<f64>() / n;
    let var = net
        .profiles()
        .iter()
        .map(|p| (p.affinity - mean).powi(2))
        .sum::<f64>()
        / n;
    Ok((mean, var.sqrt()))
}

pub fn link_tier_counts(net: &Network) -> [usize; 5] {
    let mut counts = [0; 5];
    for s in 0..net.len() {
        for t in Tier::ALL {
            counts[t.ordinal()] += net.tier_count(s, t);
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Params, Profile, ProfileId};

    fn blank(n: usize) -> Network {
        let params = Params {
            max_profiles: n,
            max_network: n.saturating_sub(1),
            people_dead: 0,
            ..Params::default()
        };
        let profiles = (0..n)
            .map(|i| Profile {
                id: ProfileId(i as u64),
                age: 20.0,
                affinity: 0.5,
                sensibility: 0.5,
                influentiability: 0.5,
            })
            .collect();
        Network::from_profiles(&params, profiles).unwrap()
    }

    fn link(net: &mut Network, s: usize, t: usize) {
        let tier = Tier::ALL.into_iter().rev().find(|&tr| net.has_room(s, tr)).unwrap();
        net.add_link(s, t, tier).unwrap();
    }

    fn undirected(n: usize, edges: &[(usize, usize)]) -> Network {
        let mut net = blank(n);
        for &(a, b) in edges {
            link(&mut net, a, b);
        }
        net
    }

    #[test]
    fn density_examples() {
        assert_eq!(network_density(&blank(5)), 0.0);
        assert_eq!(network_density(&blank(1)), 0.0);
        let net = undirected(3, &[(0, 1)]);
        assert!((network_density(&net) - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn density_of_a_thousand_links() {
        let mut net = blank(100);
        let mut placed = 0;
        'outer: for s in 0..100 {
            for d in 1..=10 {
                link(&mut net, s, (s + d) % 100);
                placed += 1;
                if placed == 1000 {
                    break 'outer;
                }
            }
        }
        assert!((network_density(&net) - 1000.0 / 9900.0).abs() < 1e-15);
    }

    #[test]
    fn mean_size_examples() {
        assert_eq!(mean_personal_network_size(&blank(4)), Ok(0.0));
        assert_eq!(mean_personal_network_size(&blank(0)), Err(MetricsError::EmptyNetwork));
        let mut net = blank(10);
        for s in 0..10 {
            for t in 0..10 {
                if s != t {
                    link(&mut net, s, t);
                }
            }
        }
        assert_eq!(mean_personal_network_size(&net), Ok(9.0));
        assert_eq!(network_density(&net), 1.0);

        let mut net = blank(5);
        link(&mut net, 1, 0);
        link(&mut net, 1, 2);
        for t in [0, 1, 3, 4] {
            link(&mut net, 2, t);
        }
        // out-degrees 0, 2, 4, 0, 0 over five nodes
        assert_eq!(mean_personal_network_size(&net), Ok(1.2));
    }

    #[test]
    fn clustering_examples() {
        assert_eq!(clustering_coefficient(&undirected(3, &[(0, 1), (1, 2), (2, 0)])), 1.0);
        assert_eq!(clustering_coefficient(&undirected(3, &[(0, 1), (1, 2)])), 0.0);
        // K4 minus the 2-3 edge: locals (2/3, 2/3, 1, 1)
        let k4_minus = undirected(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]);
        assert!((clustering_coefficient(&k4_minus) - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(clustering_coefficient(&blank(0)), 0.0);
    }

    #[test]
    fn reciprocal_links_count_once() {
        let net = undirected(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0)]);
        assert_eq!(clustering_coefficient(&net), 1.0);
    }

    #[test]
    fn outlier_boundaries() {
        let n = 60;
        let mut net = blank(n);
        // caps for 59 hold 59 links; test against a cap of 50
        for t in 1..=35 {
            link(&mut net, 0, t);
        }
        for t in 0..5 {
            link(&mut net, 1, t + 10);
        }
        for t in 0..6 {
            link(&mut net, 2, t + 10);
        }
        let (low, high) = outlier_counts(&net, 50);
        assert_eq!(high, 1);
        // slot 1 (5 links) is low, slot 2 (6) is not, slot 0 is not
        assert_eq!(low, n - 2);
        assert_eq!(outlier_counts(&blank(100), 50), (100, 0));
    }

    #[test]
    fn affinity_statistics() {
        let net = blank(7);
        assert_eq!(affinity_stats(&net).unwrap().1, 0.0);
        let params = Params { max_profiles: 2, max_network: 1, people_dead: 0, ..Params::default() };
        let profiles = [0.0, 1.0]
            .iter()
            .enumerate()
            .map(|(i, &a)| Profile {
                id: ProfileId(i as u64),
                age: 20.0,
                affinity: a,
                sensibility: 0.5,
                influentiability: 0.5,
            })
            .collect();
        let net = Network::from_profiles(&params, profiles).unwrap();
        assert_eq!(affinity_stats(&net), Ok((0.5, 0.5)));
    }

    #[test]
    fn tier_counts_partition_links() {
        assert_eq!(link_tier_counts(&blank(4)), [0; 5]);
        let net = undirected(4, &[(0, 1), (1, 2), (3, 0)]);
        assert_eq!(link_tier_counts(&net), [0, 0, 0, 0, 3]);
    }

    #[test]
    fn row_is_consistent() {
        let net = undirected(5, &[(0, 1), (1, 2), (2, 0), (3, 4)]);
        let row = MetricsRow::observe(&net).unwrap();
        assert_eq!(row.tier_counts.iter().sum::<usize>(), net.link_count());
        assert!((row.mean_net_size - row.density * 4.0).abs() < 1e-12);
    }
}
