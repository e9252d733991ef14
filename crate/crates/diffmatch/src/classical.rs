//! Classical matching algorithms: deferred acceptance with a blocking-pair
//! checker, exact max-weight assignment, brute-force enumeration, and a
//! greedy filler. These provide the baselines and small-instance ground
//! truth the generative method is measured against.

use crate::error::{Error, Result};
use crate::matchgraph::MatchingState;

/// Strict two-sided preferences with per-expert capacities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceProfile {
    user_prefs: Vec<Vec<usize>>,
    expert_prefs: Vec<Vec<usize>>,
    expert_capacity: Vec<usize>,
}

fn is_permutation(ranking: &[usize], n: usize) -> bool {
    if ranking.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in ranking {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl PreferenceProfile {
    /// Rankings must be strict (permutations of the opposite side); ties are
    /// unrepresentable and duplicate entries are rejected. Total capacity
    /// must cover all users so deferred acceptance yields a full matching.
    pub fn new(
        user_prefs: Vec<Vec<usize>>,
        expert_prefs: Vec<Vec<usize>>,
        expert_capacity: Vec<usize>,
    ) -> Result<Self> {
        let num_users = user_prefs.len();
        let num_experts = expert_prefs.len();
        if num_users == 0 || num_experts == 0 {
            return Err(Error::Config("profile needs users and experts".into()));
        }
        if expert_capacity.len() != num_experts {
            return Err(Error::Config("one capacity per expert required".into()));
        }
        for (u, r) in user_prefs.iter().enumerate() {
            if !is_permutation(r, num_experts) {
                return Err(Error::Config(format!(
                    "user {u} ranking is not a strict permutation of experts"
                )));
            }
        }
        for (e, r) in expert_prefs.iter().enumerate() {
            if !is_permutation(r, num_users) {
                return Err(Error::Config(format!(
                    "expert {e} ranking is not a strict permutation of users"
                )));
            }
        }
        if expert_capacity.iter().any(|&c| c == 0) {
            return Err(Error::Config("capacities must be >= 1".into()));
        }
        if expert_capacity.iter().sum::<usize>() < num_users {
            return Err(Error::Config(
                "total expert capacity below user count; some user could stay unmatched".into(),
            ));
        }
        Ok(Self { user_prefs, expert_prefs, expert_capacity })
    }

    pub fn num_users(&self) -> usize {
        self.user_prefs.len()
    }

    pub fn num_experts(&self) -> usize {
        self.expert_prefs.len()
    }

    pub fn capacity(&self, expert: usize) -> usize {
        self.expert_capacity[expert]
    }

    /// Loads from the sectioned `key = value` format: `[users]` and
    /// `[experts]` hold comma-separated rankings keyed `u<i>` / `e<i>`,
    /// `[capacity]` holds per-expert slot counts (default 1).
    pub fn from_text(text: &str) -> Result<Self> {
        use crate::config::raw::{parse_sections, RawSection};
        let sections = parse_sections(text)?;
        let mut users: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut experts: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut caps: Vec<(usize, usize)> = Vec::new();

        let parse_index = |prefix: char, key: &str, line: usize| -> Result<usize> {
            key.strip_prefix(prefix)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse {
                    line,
                    msg: format!("expected key like {prefix}0, got {key:?}"),
                })
        };
        let parse_list = |val: &str, line: usize| -> Result<Vec<usize>> {
            val.split(',')
                .map(|t| {
                    t.trim().parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("bad index {t:?}"),
                    })
                })
                .collect()
        };

        for RawSection { name, line, entries } in &sections {
            match name.as_str() {
                "users" => {
                    for e in entries {
                        users.push((parse_index('u', &e.key, e.line)?, parse_list(&e.value, e.line)?));
                    }
                }
                "experts" => {
                    for e in entries {
                        experts
                            .push((parse_index('e', &e.key, e.line)?, parse_list(&e.value, e.line)?));
                    }
                }
                "capacity" => {
                    for e in entries {
                        let idx = parse_index('e', &e.key, e.line)?;
                        let cap = e.value.trim().parse().map_err(|_| Error::Parse {
                            line: e.line,
                            msg: format!("bad capacity {:?}", e.value),
                        })?;
                        caps.push((idx, cap));
                    }
                }
                other => {
                    return Err(Error::Parse {
                        line: *line,
                        msg: format!("unknown section [{other}]"),
                    })
                }
            }
        }

        let collect = |mut items: Vec<(usize, Vec<usize>)>, what: &str| -> Result<Vec<Vec<usize>>> {
            items.sort_by_key(|&(i, _)| i);
            for (pos, &(i, _)) in items.iter().enumerate() {
                if i != pos {
                    return Err(Error::Config(format!("{what} indices must be 0..n contiguous")));
                }
            }
            Ok(items.into_iter().map(|(_, r)| r).collect())
        };
        let user_prefs = collect(users, "user")?;
        let expert_prefs = collect(experts, "expert")?;
        let mut expert_capacity = vec![1; expert_prefs.len()];
        for (i, c) in caps {
            if i >= expert_capacity.len() {
                return Err(Error::Config(format!("capacity for unknown expert e{i}")));
            }
            expert_capacity[i] = c;
        }
        Self::new(user_prefs, expert_prefs, expert_capacity)
    }

    /// Rank of `expert` in `user`'s list (lower is better).
    fn user_rank(&self, user: usize, expert: usize) -> usize {
        self.user_prefs[user].iter().position(|&e| e == expert).expect("validated permutation")
    }

    fn expert_rank(&self, expert: usize, user: usize) -> usize {
        self.expert_prefs[expert].iter().position(|&u| u == user).expect("validated permutation")
    }
}

/// User-proposing deferred acceptance with capacitated experts. Each user
/// fills a single slot (quota 1); experts tentatively hold their best
/// proposers up to capacity and reject the rest.
pub fn deferred_acceptance(p: &PreferenceProfile) -> MatchingState {
    let num_users = p.num_users();
    let num_experts = p.num_experts();
    let mut next_proposal = vec![0usize; num_users];
    let mut held: Vec<Vec<usize>> = vec![Vec::new(); num_experts];
    let mut free: Vec<usize> = (0..num_users).rev().collect();

    while let Some(u) = free.pop() {
        let e = p.user_prefs[u][next_proposal[u]];
        next_proposal[u] += 1;
        held[e].push(u);
        if held[e].len() > p.capacity(e) {
            // Reject the worst-ranked held proposer.
            let (worst_pos, _) = held[e]
                .iter()
                .enumerate()
                .max_by_key(|&(_, &cand)| p.expert_rank(e, cand))
                .expect("held is non-empty");
            let rejected = held[e].swap_remove(worst_pos);
            free.push(rejected);
        }
    }

    let mut m = MatchingState::new_empty(num_users, num_experts, 1).expect("validated profile");
    for (e, users) in held.iter().enumerate() {
        for &u in users {
            m.set(u, e, true);
        }
    }
    m
}

/// No blocking pair exists: a pair (u, e) blocks when u strictly prefers e
/// to its current expert and e either has spare capacity or strictly
/// prefers u to the worst user it currently holds.
pub fn is_stable(m: &MatchingState, p: &PreferenceProfile) -> Result<bool> {
    if m.num_users() != p.num_users() || m.num_experts() != p.num_experts() {
        return Err(Error::Contract("matching shape does not fit profile".into()));
    }
    if m.quota() != 1 || !m.is_feasible() {
        return Err(Error::Contract("stability is defined for feasible quota-1 matchings".into()));
    }
    let current: Vec<usize> = (0..m.num_users()).map(|u| m.experts_of(u)[0]).collect();
    let mut held: Vec<Vec<usize>> = vec![Vec::new(); m.num_experts()];
    for (u, &e) in current.iter().enumerate() {
        held[e].push(u);
    }
    for (e, users) in held.iter().enumerate() {
        if users.len() > p.capacity(e) {
            return Err(Error::Contract(format!("expert {e} over capacity")));
        }
    }

    for u in 0..m.num_users() {
        for e in 0..m.num_experts() {
            if e == current[u] || p.user_rank(u, e) >= p.user_rank(u, current[u]) {
                continue;
            }
            let expert_wants = if held[e].len() < p.capacity(e) {
                true
            } else {
                held[e].iter().any(|&v| p.expert_rank(e, u) < p.expert_rank(e, v))
            };
            if expert_wants {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Shortest-augmenting-path assignment on a rectangular cost matrix
/// (rows <= cols), minimizing. Returns the column matched to each row.
fn assignment_min(cost: &[Vec<f64>]) -> Vec<usize> {
    let rows = cost.len();
    let cols = cost[0].len();
    assert!(rows <= cols, "assignment needs rows <= cols");

    // Potentials and column->row ownership; column index `cols` is the
    // virtual source. Textbook JV shortest augmenting path.
    let mut row_pot = vec![0.0f64; rows];
    let mut col_pot = vec![0.0f64; cols + 1];
    let mut owner: Vec<Option<usize>> = vec![None; cols + 1];

    for r in 0..rows {
        let mut cur_col = cols;
        owner[cols] = Some(r);
        let mut min_to = vec![f64::INFINITY; cols + 1];
        let mut prev = vec![cols; cols + 1];
        let mut visited = vec![false; cols + 1];

        while let Some(row_here) = owner[cur_col] {
            visited[cur_col] = true;
            let mut delta = f64::INFINITY;
            let mut next_col = cols;
            for c in 0..cols {
                if visited[c] {
                    continue;
                }
                let reduced = cost[row_here][c] - row_pot[row_here] - col_pot[c];
                if reduced < min_to[c] {
                    min_to[c] = reduced;
                    prev[c] = cur_col;
                }
                if min_to[c] < delta {
                    delta = min_to[c];
                    next_col = c;
                }
            }
            for c in 0..=cols {
                if visited[c] {
                    if let Some(rw) = owner[c] {
                        row_pot[rw] += delta;
                    }
                    col_pot[c] -= delta;
                } else {
                    min_to[c] -= delta;
                }
            }
            cur_col = next_col;
        }

        // Walk the augmenting path back to the virtual source.
        while cur_col != cols {
            let back = prev[cur_col];
            owner[cur_col] = owner[back];
            cur_col = back;
        }
    }

    let mut result = vec![usize::MAX; rows];
    for c in 0..cols {
        if let Some(r) = owner[c] {
            result[r] = c;
        }
    }
    debug_assert!(result.iter().all(|&c| c != usize::MAX));
    result
}

/// Feasible matching maximizing the sum of selected weights.
///
/// Experts carry no capacity cap, so rows are independent and the optimum
/// is each row's top-`quota` weights. That direct route is cross-checked
/// against an exact augmenting-path assignment run on each user's
/// quota-replicated subproblem; disagreement indicates a numerical fault.
pub fn max_weight_assignment(weights: &[Vec<f64>], quota: usize) -> Result<MatchingState> {
    let num_users = weights.len();
    let num_experts = weights.first().map_or(0, Vec::len);
    if weights.iter().any(|r| r.len() != num_experts) {
        return Err(Error::Config("ragged weight matrix".into()));
    }
    if weights.iter().flatten().any(|w| !w.is_finite()) {
        return Err(Error::Config("weights must be finite".into()));
    }
    let direct = top_quota_rows(weights, quota)?;
    let augmenting = replicated_assignment(weights, quota)?;

    let score = |m: &MatchingState| -> f64 {
        (0..num_users)
            .map(|u| m.experts_of(u).iter().map(|&e| weights[u][e]).sum::<f64>())
            .sum()
    };
    let (sd, sa) = (score(&direct), score(&augmenting));
    if (sd - sa).abs() > 1e-9 * (1.0 + sd.abs().max(sa.abs())) {
        return Err(Error::Contract(format!(
            "assignment routes disagree: top-quota {sd} vs augmenting {sa}"
        )));
    }
    Ok(direct)
}

/// Route 1: each row independently takes its top-quota weights
/// (ties broken toward the lower expert index).
pub fn top_quota_rows(weights: &[Vec<f64>], quota: usize) -> Result<MatchingState> {
    let num_users = weights.len();
    let num_experts = weights.first().map_or(0, Vec::len);
    let mut m = MatchingState::new_empty(num_users, num_experts, quota)?;
    for (u, row) in weights.iter().enumerate() {
        let mut idx: Vec<usize> = (0..num_experts).collect();
        idx.sort_by(|&a, &b| row[b].partial_cmp(&row[a]).expect("finite").then(a.cmp(&b)));
        m.set_row(u, &idx[..quota]);
    }
    Ok(m)
}

/// Route 2: exact augmenting-path assignment per user on `quota` replicated
/// rows (minimizing negated weights), distinct experts within the user.
pub fn replicated_assignment(weights: &[Vec<f64>], quota: usize) -> Result<MatchingState> {
    let num_users = weights.len();
    let num_experts = weights.first().map_or(0, Vec::len);
    let mut m = MatchingState::new_empty(num_users, num_experts, quota)?;
    for (u, row) in weights.iter().enumerate() {
        let cost: Vec<Vec<f64>> = (0..quota).map(|_| row.iter().map(|w| -w).collect()).collect();
        let cols = assignment_min(&cost);
        m.set_row(u, &cols);
    }
    Ok(m)
}

/// Enumerates every feasible matching, scoring each with `score`; returns an
/// argmax and its value. Ties keep the first candidate in lexicographic
/// row-subset order. Guarded at C(E, quota)^U <= 10^6 candidates.
pub fn brute_force_best<F>(
    score: F,
    num_users: usize,
    num_experts: usize,
    quota: usize,
) -> Result<(MatchingState, f64)>
where
    F: FnMut(&MatchingState) -> f64,
{
    let mut score = score;
    let subsets = quota_subsets(num_experts, quota);
    let candidates = (subsets.len() as f64).powi(num_users as i32);
    if candidates > 1e6 {
        return Err(Error::SearchSpace(format!(
            "{} row subsets ^ {num_users} users = {candidates:.3e} candidates (limit 1e6)",
            subsets.len()
        )));
    }

    let mut m = MatchingState::new_empty(num_users, num_experts, quota)?;
    let mut digits = vec![0usize; num_users];
    for (u, d) in digits.iter().enumerate() {
        m.set_row(u, &subsets[*d]);
    }
    let mut best = m.clone();
    let mut best_score = score(&m);

    // Odometer over per-row subset indices, most significant digit first,
    // so candidates appear in lexicographic row-subset order.
    loop {
        let mut pos = num_users;
        while pos > 0 {
            pos -= 1;
            if digits[pos] + 1 < subsets.len() {
                digits[pos] += 1;
                m.set_row(pos, &subsets[digits[pos]]);
                break;
            }
            digits[pos] = 0;
            m.set_row(pos, &subsets[0]);
            if pos == 0 {
                return Ok((best, best_score));
            }
        }
        let s = score(&m);
        if s > best_score {
            best_score = s;
            best = m.clone();
        }
    }
}

/// All quota-subsets of 0..n in lexicographic order.
pub fn quota_subsets(n: usize, quota: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(quota);
    fn rec(start: usize, n: usize, quota: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == quota {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, quota, cur, out);
            cur.pop();
        }
    }
    rec(0, n, quota, &mut cur, &mut out);
    out
}

/// Fills rows in index order; each user takes the subset with the highest
/// marginal gain as reported by `score_gain(partial, user, subset)`.
/// Ties keep the lexicographically first subset.
pub fn greedy_matching<F>(
    num_users: usize,
    num_experts: usize,
    quota: usize,
    score_gain: F,
) -> Result<MatchingState>
where
    F: FnMut(&MatchingState, usize, &[usize]) -> f64,
{
    let mut score_gain = score_gain;
    let subsets = quota_subsets(num_experts, quota);
    let mut m = MatchingState::new_empty(num_users, num_experts, quota)?;
    for u in 0..num_users {
        let mut best = 0usize;
        let mut best_gain = f64::NEG_INFINITY;
        for (i, subset) in subsets.iter().enumerate() {
            let g = score_gain(&m, u, subset);
            if g > best_gain {
                best_gain = g;
                best = i;
            }
        }
        m.set_row(u, &subsets[best]);
    }
    Ok(m)
}
