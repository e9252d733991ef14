//! Bipartite user-expert matching graphs.
//!
//! A matching assigns each user a fixed number (`quota`) of experts out of a
//! complete bipartite candidate set. [`MatchingState`] is the dense binary
//! assignment matrix, [`OneHotGraph`] its two-channel encoding used by the
//! discrete denoising process, and [`StreamPartition`] the induced split of
//! experts into common / private / inactive for RSMA stream mapping.

use crate::error::{Error, Result};
use rand::Rng;

/// Binary user x expert assignment matrix with a per-user quota.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingState {
    assign: Vec<u8>,
    num_users: usize,
    num_experts: usize,
    quota: usize,
}

impl MatchingState {
    /// All-zero assignment. Dimensions and quota are validated here once;
    /// every later mutation goes through checked setters.
    pub fn new_empty(num_users: usize, num_experts: usize, quota: usize) -> Result<Self> {
        if num_users == 0 || num_experts == 0 {
            return Err(Error::Config(format!(
                "need at least one user and one expert, got {num_users} x {num_experts}"
            )));
        }
        if quota == 0 || quota > num_experts {
            return Err(Error::Config(format!(
                "quota {quota} must be in 1..={num_experts}"
            )));
        }
        Ok(Self {
            assign: vec![0; num_users * num_experts],
            num_users,
            num_experts,
            quota,
        })
    }

    /// Builds a state from explicit rows. Entries must be 0/1.
    pub fn from_rows(rows: &[Vec<u8>], quota: usize) -> Result<Self> {
        let num_users = rows.len();
        let num_experts = rows.first().map_or(0, Vec::len);
        let mut m = Self::new_empty(num_users, num_experts, quota)?;
        for (u, row) in rows.iter().enumerate() {
            if row.len() != num_experts {
                return Err(Error::Config(format!(
                    "row {u} has {} entries, expected {num_experts}",
                    row.len()
                )));
            }
            for (e, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::Config(format!("entry ({u},{e}) = {v} is not binary")));
                }
                m.assign[u * num_experts + e] = v;
            }
        }
        Ok(m)
    }

    pub fn num_users(&self) -> usize {
        self.num_users
    }

    pub fn num_experts(&self) -> usize {
        self.num_experts
    }

    pub fn quota(&self) -> usize {
        self.quota
    }

    pub fn get(&self, user: usize, expert: usize) -> bool {
        self.assign[user * self.num_experts + expert] == 1
    }

    pub fn set(&mut self, user: usize, expert: usize, on: bool) {
        self.assign[user * self.num_experts + expert] = u8::from(on);
    }

    /// Experts assigned to `user`, ascending.
    pub fn experts_of(&self, user: usize) -> Vec<usize> {
        (0..self.num_experts).filter(|&e| self.get(user, e)).collect()
    }

    pub fn row_sum(&self, user: usize) -> usize {
        (0..self.num_experts).filter(|&e| self.get(user, e)).count()
    }

    pub fn col_sum(&self, expert: usize) -> usize {
        (0..self.num_users).filter(|&u| self.get(u, expert)).count()
    }

    /// True iff every row holds exactly `quota` edges.
    pub fn is_feasible(&self) -> bool {
        (0..self.num_users).all(|u| self.row_sum(u) == self.quota)
    }

    /// Replaces a row with the given expert subset.
    pub fn set_row(&mut self, user: usize, experts: &[usize]) {
        for e in 0..self.num_experts {
            self.set(user, e, false);
        }
        for &e in experts {
            self.set(user, e, true);
        }
    }

    /// Plain-text grid: one user per line, `0`/`1` separated by spaces.
    pub fn to_grid(&self) -> String {
        let mut out = String::new();
        for u in 0..self.num_users {
            for e in 0..self.num_experts {
                if e > 0 {
                    out.push(' ');
                }
                out.push(if self.get(u, e) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    /// Parses the grid format produced by [`to_grid`](Self::to_grid).
    pub fn from_grid(text: &str, quota: usize) -> Result<Self> {
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut row = Vec::new();
            for tok in line.split_whitespace() {
                match tok {
                    "0" => row.push(0),
                    "1" => row.push(1),
                    other => {
                        return Err(Error::Parse {
                            line: i + 1,
                            msg: format!("expected 0 or 1, got {other:?}"),
                        })
                    }
                }
            }
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("ragged row: {} entries, expected {}", row.len(), first.len()),
                    });
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse { line: 1, msg: "empty grid".into() });
        }
        Self::from_rows(&rows, quota)
    }
}

/// Two-channel encoding of a (possibly noisy) matching graph.
///
/// Channel 1 carries the edge-present weight, channel 0 its complement, so
/// the channels sum to one by construction. A hard graph has entries in
/// {0, 1}.
#[derive(Debug, Clone, PartialEq)]
pub struct OneHotGraph {
    p1: Vec<f64>,
    num_users: usize,
    num_experts: usize,
}

impl OneHotGraph {
    pub fn from_probs(p1: Vec<f64>, num_users: usize, num_experts: usize) -> Result<Self> {
        if p1.len() != num_users * num_experts {
            return Err(Error::Contract(format!(
                "probability plane has {} entries, expected {}",
                p1.len(),
                num_users * num_experts
            )));
        }
        if p1.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::Contract("edge probability outside [0,1]".into()));
        }
        Ok(Self { p1, num_users, num_experts })
    }

    pub fn num_users(&self) -> usize {
        self.num_users
    }

    pub fn num_experts(&self) -> usize {
        self.num_experts
    }

    pub fn num_edges(&self) -> usize {
        self.num_users * self.num_experts
    }

    /// Channel value at (user, expert, channel). Channel 1 is edge-present.
    pub fn channel(&self, user: usize, expert: usize, ch: usize) -> f64 {
        let p = self.p1[user * self.num_experts + expert];
        match ch {
            1 => p,
            0 => 1.0 - p,
            _ => panic!("one-hot graph has two channels"),
        }
    }

    /// Edge-present plane, row-major.
    pub fn edge_probs(&self) -> &[f64] {
        &self.p1
    }

    pub fn is_hard(&self) -> bool {
        self.p1.iter().all(|&p| p == 0.0 || p == 1.0)
    }
}

/// One-hot encoding of a binary matching: channel 1 = assignment entry.
pub fn one_hot_encode(m: &MatchingState) -> OneHotGraph {
    let p1 = (0..m.num_users())
        .flat_map(|u| (0..m.num_experts()).map(move |e| if m.get(u, e) { 1.0 } else { 0.0 }))
        .collect();
    OneHotGraph { p1, num_users: m.num_users(), num_experts: m.num_experts() }
}

/// Thresholds a graph back to a binary matching (no feasibility repair).
pub fn decode(g: &OneHotGraph, quota: usize) -> Result<MatchingState> {
    let mut m = MatchingState::new_empty(g.num_users, g.num_experts, quota)?;
    for u in 0..g.num_users {
        for e in 0..g.num_experts {
            m.set(u, e, g.channel(u, e, 1) > 0.5);
        }
    }
    Ok(m)
}

/// Uniform feasible matching: each row is an independent uniform
/// quota-subset of the experts.
pub fn random_matching<R: Rng>(
    rng: &mut R,
    num_users: usize,
    num_experts: usize,
    quota: usize,
) -> Result<MatchingState> {
    let mut m = MatchingState::new_empty(num_users, num_experts, quota)?;
    for u in 0..num_users {
        let picks = rand::seq::index::sample(rng, num_experts, quota);
        for e in picks.iter() {
            m.set(u, e, true);
        }
    }
    Ok(m)
}

/// Split of the expert set induced by a matching: experts serving two or
/// more users carry a common stream, experts serving exactly one user carry
/// that user's private stream, the rest are inactive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamPartition {
    pub common_experts: Vec<usize>,
    pub private_pairs: Vec<(usize, usize)>,
    pub inactive_experts: Vec<usize>,
    /// Per-user count of assigned common experts (common payload share).
    pub common_load: Vec<usize>,
}

impl StreamPartition {
    /// Users assigned at least one private expert, ascending and deduplicated.
    pub fn private_users(&self) -> Vec<usize> {
        let mut users: Vec<usize> = self.private_pairs.iter().map(|&(u, _)| u).collect();
        users.sort_unstable();
        users.dedup();
        users
    }

    /// Users that consume at least one common expert, ascending.
    pub fn common_users(&self) -> Vec<usize> {
        self.common_load
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(u, _)| u)
            .collect()
    }

    pub fn num_active_experts(&self) -> usize {
        self.common_experts.len() + self.private_pairs.len()
    }
}

/// Stream partition of a feasible matching.
pub fn derive_streams(m: &MatchingState) -> Result<StreamPartition> {
    if !m.is_feasible() {
        return Err(Error::Contract(
            "derive_streams requires a feasible matching".into(),
        ));
    }
    Ok(derive_streams_lenient(m))
}

/// Same partition math without the feasibility gate; used when scoring
/// partial or unrepaired graphs.
pub fn derive_streams_lenient(m: &MatchingState) -> StreamPartition {
    let mut common_experts = Vec::new();
    let mut private_pairs = Vec::new();
    let mut inactive_experts = Vec::new();
    for e in 0..m.num_experts() {
        match m.col_sum(e) {
            0 => inactive_experts.push(e),
            1 => {
                let u = (0..m.num_users()).find(|&u| m.get(u, e)).expect("col_sum said 1");
                private_pairs.push((u, e));
            }
            _ => common_experts.push(e),
        }
    }
    let common_load = (0..m.num_users())
        .map(|u| common_experts.iter().filter(|&&e| m.get(u, e)).count())
        .collect();
    StreamPartition { common_experts, private_pairs, inactive_experts, common_load }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seeding::substream;

    #[test]
    fn new_empty_matches_requested_shape() {
        let m = MatchingState::new_empty(15, 6, 2).unwrap();
        assert_eq!(m.num_users(), 15);
        assert_eq!(m.num_experts(), 6);
        assert!((0..15).all(|u| m.row_sum(u) == 0));

        let tiny = MatchingState::new_empty(1, 1, 1).unwrap();
        assert!(!tiny.get(0, 0));
    }

    #[test]
    fn new_empty_rejects_bad_quota() {
        assert!(MatchingState::new_empty(2, 3, 4).is_err());
        assert!(MatchingState::new_empty(2, 3, 0).is_err());
        assert!(MatchingState::new_empty(0, 3, 1).is_err());
    }

    #[test]
    fn feasibility_is_exact_row_sum() {
        let m = MatchingState::from_rows(&[vec![1, 1, 0]], 2).unwrap();
        assert!(m.is_feasible());
        let m = MatchingState::from_rows(&[vec![1, 0, 0]], 2).unwrap();
        assert!(!m.is_feasible());
        let full = MatchingState::from_rows(&vec![vec![1; 6]; 15], 2).unwrap();
        assert!(!full.is_feasible());
    }

    #[test]
    fn one_hot_encode_definition() {
        let m = MatchingState::from_rows(&[vec![1, 0]], 1).unwrap();
        let g = one_hot_encode(&m);
        assert_eq!(g.channel(0, 0, 1), 1.0);
        assert_eq!(g.channel(0, 0, 0), 0.0);
        assert_eq!(g.channel(0, 1, 1), 0.0);
        assert_eq!(g.channel(0, 1, 0), 1.0);

        let z = MatchingState::new_empty(3, 4, 2).unwrap();
        let g = one_hot_encode(&z);
        for u in 0..3 {
            for e in 0..4 {
                assert_eq!(g.channel(u, e, 0), 1.0);
            }
        }
    }

    #[test]
    fn channels_sum_to_one() {
        let g = OneHotGraph::from_probs(vec![0.25, 0.5, 1.0, 0.0], 2, 2).unwrap();
        for u in 0..2 {
            for e in 0..2 {
                assert_eq!(g.channel(u, e, 0) + g.channel(u, e, 1), 1.0);
            }
        }
    }

    // Exhaustive round trip for all binary matrices with U,E <= 3, then a
    // seeded random sweep at larger shapes.
    #[test]
    fn encode_decode_round_trip() {
        for users in 1..=3usize {
            for experts in 1..=3usize {
                let cells = users * experts;
                for bits in 0..(1u32 << cells) {
                    let rows: Vec<Vec<u8>> = (0..users)
                        .map(|u| {
                            (0..experts)
                                .map(|e| ((bits >> (u * experts + e)) & 1) as u8)
                                .collect()
                        })
                        .collect();
                    let m = MatchingState::from_rows(&rows, 1).unwrap();
                    let back = decode(&one_hot_encode(&m), 1).unwrap();
                    assert_eq!(m, back);
                }
            }
        }

        let mut rng = substream(7, &[1]);
        for _ in 0..1000 {
            let rows: Vec<Vec<u8>> = (0..15)
                .map(|_| (0..6).map(|_| u8::from(rng.gen::<bool>())).collect())
                .collect();
            let m = MatchingState::from_rows(&rows, 2).unwrap();
            assert_eq!(decode(&one_hot_encode(&m), 2).unwrap(), m);
        }
    }

    #[test]
    fn random_matching_full_quota_is_all_ones() {
        for seed in 0..5 {
            let mut rng = substream(seed, &[]);
            let m = random_matching(&mut rng, 4, 3, 3).unwrap();
            assert!((0..4).all(|u| m.row_sum(u) == 3));
        }
    }

    #[test]
    fn random_matching_is_deterministic_and_feasible() {
        let a = random_matching(&mut substream(99, &[2]), 15, 6, 2).unwrap();
        let b = random_matching(&mut substream(99, &[2]), 15, 6, 2).unwrap();
        assert_eq!(a, b);
        assert!(a.is_feasible());
    }

    #[test]
    fn random_matching_per_edge_frequency() {
        // (1, 6, 2): each expert appears with marginal 2/6.
        let mut rng = substream(31, &[]);
        let draws = 100_000;
        let mut counts = [0u32; 6];
        for _ in 0..draws {
            let m = random_matching(&mut rng, 1, 6, 2).unwrap();
            for e in 0..6 {
                if m.get(0, e) {
                    counts[e] += 1;
                }
            }
        }
        for c in counts {
            let freq = f64::from(c) / draws as f64;
            assert!((freq - 2.0 / 6.0).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn random_matching_subsets_are_uniform() {
        // Chi-square over the 15 quota-2 subsets of 6 experts at 1e5 draws.
        // chi2 critical value, 14 dof, p = 0.001.
        const CRIT: f64 = 36.1233;
        let mut rng = substream(12, &[]);
        let draws = 100_000usize;
        let mut counts = std::collections::BTreeMap::new();
        for _ in 0..draws {
            let m = random_matching(&mut rng, 1, 6, 2).unwrap();
            *counts.entry(m.experts_of(0)).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 15);
        let expected = draws as f64 / 15.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| {
                let d = f64::from(c) - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < CRIT, "chi2 {chi2} exceeds {CRIT}");
    }

    #[test]
    fn derive_streams_small_cases() {
        // Both users choose expert 0 -> common.
        let m = MatchingState::from_rows(&[vec![1, 0], vec![1, 0]], 1).unwrap();
        let p = derive_streams(&m).unwrap();
        assert_eq!(p.common_experts, vec![0]);
        assert!(p.private_pairs.is_empty());
        assert_eq!(p.inactive_experts, vec![1]);
        assert_eq!(p.common_load, vec![1, 1]);

        // Disjoint experts -> both private.
        let m = MatchingState::from_rows(&[vec![1, 0], vec![0, 1]], 1).unwrap();
        let p = derive_streams(&m).unwrap();
        assert!(p.common_experts.is_empty());
        assert_eq!(p.private_pairs, vec![(0, 0), (1, 1)]);
        assert!(p.inactive_experts.is_empty());
    }

    #[test]
    fn derive_streams_rejects_infeasible() {
        let m = MatchingState::from_rows(&[vec![1, 0], vec![0, 0]], 1).unwrap();
        assert!(matches!(derive_streams(&m), Err(Error::Contract(_))));
    }

    #[test]
    fn derive_streams_matches_column_sum_oracle() {
        // Independent recount of column sums on a seeded 15x6 matching.
        let m = random_matching(&mut substream(5, &[8]), 15, 6, 2).unwrap();
        let p = derive_streams(&m).unwrap();
        for e in 0..6 {
            let col: usize = (0..15).map(|u| usize::from(m.get(u, e))).sum();
            let in_common = p.common_experts.contains(&e);
            let in_private = p.private_pairs.iter().any(|&(_, pe)| pe == e);
            let in_inactive = p.inactive_experts.contains(&e);
            assert_eq!(u32::from(in_common) + u32::from(in_private) + u32::from(in_inactive), 1);
            match col {
                0 => assert!(in_inactive),
                1 => assert!(in_private),
                _ => assert!(in_common),
            }
        }
        assert_eq!(
            p.common_experts.len() + p.private_pairs.len() + p.inactive_experts.len(),
            6
        );
    }

    #[test]
    fn grid_round_trip_and_errors() {
        let m = random_matching(&mut substream(3, &[4]), 4, 5, 2).unwrap();
        let text = m.to_grid();
        let back = MatchingState::from_grid(&text, 2).unwrap();
        assert_eq!(m, back);

        assert!(MatchingState::from_grid("0 1\n1", 1).is_err());
        assert!(MatchingState::from_grid("0 2\n", 1).is_err());
        assert!(MatchingState::from_grid("", 1).is_err());
    }
}
