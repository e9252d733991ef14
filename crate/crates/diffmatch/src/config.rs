//! Experiment configuration: a sectioned `key = value` text format with
//! `#` comments. Every key has a default; unknown sections or keys are
//! rejected with their line number. `dump` emits a canonical text that
//! parses back to an equal config.

use crate::error::{Error, Result};

/// Low-level sectioned parser shared with other text inputs.
pub mod raw {
    use crate::error::{Error, Result};

    #[derive(Debug, Clone)]
    pub struct RawEntry {
        pub key: String,
        pub value: String,
        pub line: usize,
    }

    #[derive(Debug, Clone)]
    pub struct RawSection {
        pub name: String,
        pub line: usize,
        pub entries: Vec<RawEntry>,
    }

    /// Splits text into `[section]` blocks of `key = value` lines.
    /// `#` starts a comment; blank lines are skipped.
    pub fn parse_sections(text: &str) -> Result<Vec<RawSection>> {
        let mut sections: Vec<RawSection> = Vec::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw_line.find('#') {
                Some(p) => &raw_line[..p],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name.strip_suffix(']').ok_or(Error::Parse {
                    line: line_no,
                    msg: "unterminated section header".into(),
                })?;
                sections.push(RawSection {
                    name: name.trim().to_string(),
                    line: line_no,
                    entries: Vec::new(),
                });
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: line_no,
                msg: format!("expected `key = value`, got {line:?}"),
            })?;
            let section = sections.last_mut().ok_or(Error::Parse {
                line: line_no,
                msg: "entry before any [section] header".into(),
            })?;
            section.entries.push(RawEntry {
                key: key.trim().to_string(),
                value: value.trim().to_string(),
                line: line_no,
            });
        }
        Ok(sections)
    }
}

fn parse_num<T: std::str::FromStr>(value: &str, line: usize) -> Result<T> {
    value.trim().parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse {value:?}"),
    })
}

fn parse_list<T: std::str::FromStr>(value: &str, line: usize) -> Result<Vec<T>> {
    value
        .split(',')
        .map(|t| parse_num(t, line))
        .collect::<Result<Vec<T>>>()
        .and_then(|v| {
            if v.is_empty() {
                Err(Error::Parse { line, msg: "empty list".into() })
            } else {
                Ok(v)
            }
        })
}

fn fmt_list<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Scenario shape: who is matched to whom.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioCfg {
    pub num_users: usize,
    pub num_experts: usize,
    pub quota: usize,
}

impl Default for ScenarioCfg {
    fn default() -> Self {
        Self { num_users: 15, num_experts: 6, quota: 2 }
    }
}

/// Downlink radio parameters (SNR comes from the grid / experiment).
#[derive(Debug, Clone, PartialEq)]
pub struct RadioCfg {
    pub carrier_freq_hz: f64,
    pub dist_min_m: f64,
    pub dist_max_m: f64,
    pub num_antennas: usize,
    pub path_loss_exponent: f64,
    pub common_power_fraction: f64,
}

impl Default for RadioCfg {
    fn default() -> Self {
        Self {
            carrier_freq_hz: 2.4e9,
            dist_min_m: 50.0,
            dist_max_m: 100.0,
            num_antennas: 16,
            path_loss_exponent: 2.0,
            common_power_fraction: 0.3,
        }
    }
}

/// Evaluation SNR grid in dB.
#[derive(Debug, Clone, PartialEq)]
pub struct SnrGridCfg {
    pub min_db: f64,
    pub max_db: f64,
    pub step_db: f64,
}

impl Default for SnrGridCfg {
    fn default() -> Self {
        Self { min_db: -10.0, max_db: 30.0, step_db: 5.0 }
    }
}

impl SnrGridCfg {
    /// Ascending grid points, inclusive of `max_db` up to fp slack.
    pub fn points(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        let mut v = self.min_db;
        while v <= self.max_db + 1e-9 {
            pts.push(v);
            v += self.step_db;
        }
        pts
    }

    /// Midpoint of the grid (used by the convergence experiment).
    pub fn mid_db(&self) -> f64 {
        let pts = self.points();
        pts[pts.len() / 2]
    }
}

/// Reward weights and QoE surrogate parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardCfg {
    pub lambda_energy: f64,
    pub lambda_compute: f64,
    pub payload_bits: f64,
    pub bandwidth_hz: f64,
    pub r_req: f64,
    pub affinity_seed: u64,
}

impl Default for RewardCfg {
    fn default() -> Self {
        Self {
            lambda_energy: 0.01,
            lambda_compute: 0.1,
            payload_bits: 1e6,
            bandwidth_hz: 1e7,
            r_req: 2.0,
            affinity_seed: 7,
        }
    }
}

/// Fixed standardization constants for the condition features; declared
/// here so inference never depends on batch statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionCfg {
    pub gain_db_mean: f64,
    pub gain_db_scale: f64,
    pub snr_mean_db: f64,
    pub snr_scale_db: f64,
    pub affinity_mean: f64,
    pub affinity_scale: f64,
}

impl Default for ConditionCfg {
    fn default() -> Self {
        Self {
            gain_db_mean: -65.0,
            gain_db_scale: 10.0,
            snr_mean_db: 10.0,
            snr_scale_db: 20.0,
            affinity_mean: 0.5,
            affinity_scale: 0.5,
        }
    }
}

/// Training hyperparameters for both learners.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingCfg {
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub diffusion_steps: Vec<usize>,
    pub hidden_dims: Vec<usize>,
    pub dqn_learning_rate: f64,
    pub dqn_buffer_capacity: usize,
    pub dqn_batch: usize,
    pub dqn_target_sync: usize,
    pub dqn_eps_start: f64,
    pub dqn_eps_end: f64,
    pub dqn_warmup: usize,
    pub dqn_episodes_per_epoch: usize,
    pub dqn_train_every: usize,
    pub eval_drops: usize,
}

impl Default for TrainingCfg {
    fn default() -> Self {
        Self {
            epochs: 200,
            batch_size: 16,
            learning_rate: 1e-2,
            diffusion_steps: vec![3, 6],
            hidden_dims: vec![64, 64],
            dqn_learning_rate: 1e-3,
            dqn_buffer_capacity: 10_000,
            dqn_batch: 32,
            dqn_target_sync: 500,
            dqn_eps_start: 1.0,
            dqn_eps_end: 0.05,
            dqn_warmup: 200,
            dqn_episodes_per_epoch: 8,
            dqn_train_every: 2,
            eval_drops: 200,
        }
    }
}

/// Small-instance cross-check suite parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCfg {
    pub epochs: usize,
    pub trials: usize,
    pub reward_fraction: f64,
    pub min_pass: usize,
}

impl Default for OracleCfg {
    fn default() -> Self {
        Self { epochs: 300, trials: 10, reward_fraction: 0.95, min_pass: 8 }
    }
}

/// Seeds and output location.
#[derive(Debug, Clone, PartialEq)]
pub struct RunCfg {
    pub seeds: Vec<u64>,
    pub out_dir: String,
}

impl Default for RunCfg {
    fn default() -> Self {
        Self { seeds: vec![1, 2, 3, 4, 5], out_dir: "out".into() }
    }
}

/// The full experiment description.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentConfig {
    pub scenario: ScenarioCfg,
    pub radio: RadioCfg,
    pub snr: SnrGridCfg,
    pub reward: RewardCfg,
    pub condition: ConditionCfg,
    pub training: TrainingCfg,
    pub oracle: OracleCfg,
    pub run: RunCfg,
}

impl ExperimentConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for section in raw::parse_sections(text)? {
            match section.name.as_str() {
                "scenario" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "num_users" => cfg.scenario.num_users = parse_num(&e.value, e.line)?,
                            "num_experts" => cfg.scenario.num_experts = parse_num(&e.value, e.line)?,
                            "quota" => cfg.scenario.quota = parse_num(&e.value, e.line)?,
                            k => return unknown_key(k, e.line),
                        }
                    }
                }
                "radio" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "carrier_freq_hz" => cfg.radio.carrier_freq_hz = parse_num(&e.value, e.line)?,
                            "dist_min_m" => cfg.radio.dist_min_m = parse_num(&e.value, e.line)?,
                            "dist_max_m" => cfg.radio.dist_max_m = parse_num(&e.value, e.line)?,
                            "num_antennas" => cfg.radio.num_antennas = parse_num(&e.value, e.line)?,
                            "path_loss_exponent" => {
                                cfg.radio.path_loss_exponent = parse_num(&e.value, e.line)?;
                            }
                            "common_power_fraction" => {
                                cfg.radio.common_power_fraction = parse_num(&e.value, e.line)?;
                            }
                            k => return unknown_key(k, e.line),
                        }
                    }
                }
                "snr" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "min_db" => cfg.snr.min_db = parse_num(&e.value, e.line)?,
                            "max_db" => cfg.snr.max_db = parse_num(&e.value, e.line)?,
                            "step_db" => cfg.snr.step_db = parse_num(&e.value, e.line)?,
                            k => return unknown_key(k, e.line),
                        }
                    }
                }
                "reward" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "lambda_energy" => cfg.reward.lambda_energy = parse_num(&e.value, e.line)?,
                            "lambda_compute" => cfg.reward.lambda_compute = parse_num(&e.value, e.line)?,
                            "payload_bits" => cfg.reward.payload_bits = parse_num(&e.value, e.line)?,
                            "bandwidth_hz" => cfg.reward.bandwidth_hz = parse_num(&e.value, e.line)?,
                            "r_req" => cfg.reward.r_req = parse_num(&e.value, e.line)?,
                            "affinity_seed" => cfg.reward.affinity_seed = parse_num(&e.value, e.line)?,
                            k => return unknown_key(k, e.line),
                        }
                    }
                }
                "condition" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "gain_db_mean" => cfg.condition.gain_db_mean = parse_num(&e.value, e.line)?,
                            "gain_db_scale" => cfg.condition.gain_db_scale = parse_num(&e.value, e.line)?,
                            "snr_mean_db" => cfg.condition.snr_mean_db = parse_num(&e.value, e.line)?,
                            "snr_scale_db" => cfg.condition.snr_scale_db = parse_num(&e.value, e.line)?,
                            "affinity_mean" => cfg.condition.affinity_mean = parse_num(&e.value, e.line)?,
                            "affinity_scale" => {
                                cfg.condition.affinity_scale = parse_num(&e.value, e.line)?;
                            }
                            k => return unknown_key(k, e.line),
                        }
                    }
                }
                "training" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "epochs" => cfg.training.epochs = parse_num(&e.value, e.line)?,
                            "batch_size" => cfg.training.batch_size = parse_num(&e.value, e.line)?,
                            "learning_rate" => cfg.training.learning_rate = parse_num(&e.value, e.line)?,
                            "diffusion_steps" => {
                                cfg.training.diffusion_steps = parse_list(&e.value, e.line)?;
                            }
                            "hidden_dims" => cfg.training.hidden_dims = parse_list(&e.value, e.line)?,
                            "dqn_learning_rate" => {
                                cfg.training.dqn_learning_rate = parse_num(&e.value, e.line)?;
                            }
                            "dqn_buffer_capacity" => {
                                cfg.training.dqn_buffer_capacity = parse_num(&e.value, e.line)?;
                            }
                            "dqn_batch" => cfg.training.dqn_batch = parse_num(&e.value, e.line)?,
                            "dqn_target_sync" => {
                                cfg.training.dqn_target_sync = parse_num(&e.value, e.line)?;
                            }
                            "dqn_eps_start" => cfg.training.dqn_eps_start = parse_num(&e.value, e.line)?,
                            "dqn_eps_end" => cfg.training.dqn_eps_end = parse_num(&e.value, e.line)?,
                            "dqn_warmup" => cfg.training.dqn_warmup = parse_num(&e.value, e.line)?,
                            "dqn_episodes_per_epoch" => {
                                cfg.training.dqn_episodes_per_epoch = parse_num(&e.value, e.line)?;
                            }
                            "dqn_train_every" => {
                                cfg.training.dqn_train_every = parse_num(&e.value, e.line)?;
                            }
                            "eval_drops" => cfg.training.eval_drops = parse_num(&e.value, e.line)?,
                            k => return unknown_key(k, e.line),
                        }
                    }
                }
                "oracle" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "epochs" => cfg.oracle.epochs = parse_num(&e.value, e.line)?,
                            "trials" => cfg.oracle.trials = parse_num(&e.value, e.line)?,
                            "reward_fraction" => cfg.oracle.reward_fraction = parse_num(&e.value, e.line)?,
                            "min_pass" => cfg.oracle.min_pass = parse_num(&e.value, e.line)?,
                            k => return unknown_key(k, e.line),
                        }
                    }
                }
                "run" => {
                    for e in &section.entries {
                        match e.key.as_str() {
                            "seeds" => cfg.run.seeds = parse_list(&e.value, e.line)?,
                            "out_dir" => cfg.run.out_dir = e.value.clone(),
                            k => return unknown_key(k, e.line),
                        }
                    }
                }
                other => {
                    return Err(Error::Parse {
                        line: section.line,
                        msg: format!("unknown section [{other}]"),
                    })
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.scenario;
        if s.num_users == 0 || s.num_experts == 0 {
            return Err(Error::Config("scenario counts must be >= 1".into()));
        }
        if s.quota == 0 || s.quota > s.num_experts {
            return Err(Error::Config(format!(
                "quota {} must be in 1..={}",
                s.quota, s.num_experts
            )));
        }
        if s.quota > 3 {
            return Err(Error::Config("quota is configurable in 1..=3".into()));
        }
        let r = &self.radio;
        if !(r.carrier_freq_hz > 0.0) {
            return Err(Error::Config("carrier frequency must be positive".into()));
        }
        if !(r.dist_min_m > 0.0) || r.dist_min_m > r.dist_max_m {
            return Err(Error::Config("need 0 < dist_min_m <= dist_max_m".into()));
        }
        if r.num_antennas == 0 {
            return Err(Error::Config("need at least one antenna".into()));
        }
        if !(0.0..1.0).contains(&r.common_power_fraction) {
            return Err(Error::Config("common_power_fraction must be in [0,1)".into()));
        }
        if r.num_antennas < s.num_users {
            return Err(Error::Config(format!(
                "{} antennas cannot zero-force up to {} private users",
                r.num_antennas, s.num_users
            )));
        }
        if self.snr.max_db < self.snr.min_db {
            return Err(Error::Config(format!(
                "snr max {} below min {}",
                self.snr.max_db, self.snr.min_db
            )));
        }
        if !(self.snr.step_db > 0.0) {
            return Err(Error::Config("snr step must be positive".into()));
        }
        let w = &self.reward;
        if !(w.r_req > 0.0) || !(w.payload_bits > 0.0) || !(w.bandwidth_hz > 0.0) {
            return Err(Error::Config("reward scales must be positive".into()));
        }
        if w.lambda_energy < 0.0 || w.lambda_compute < 0.0 {
            return Err(Error::Config("cost weights must be non-negative".into()));
        }
        let t = &self.training;
        if t.epochs == 0 || t.batch_size < 2 {
            return Err(Error::Config("need epochs >= 1 and batch_size >= 2".into()));
        }
        if t.diffusion_steps.is_empty() || t.diffusion_steps.contains(&0) {
            return Err(Error::Config("diffusion_steps must be >= 1".into()));
        }
        if t.hidden_dims.is_empty() || t.hidden_dims.contains(&0) {
            return Err(Error::Config("hidden_dims must be non-empty positive".into()));
        }
        if !(t.learning_rate > 0.0) || !(t.dqn_learning_rate > 0.0) {
            return Err(Error::Config("learning rates must be positive".into()));
        }
        if !(0.0..=1.0).contains(&t.dqn_eps_start) || !(0.0..=1.0).contains(&t.dqn_eps_end) {
            return Err(Error::Config("epsilon bounds must be in [0,1]".into()));
        }
        if t.dqn_batch == 0 || t.dqn_buffer_capacity < t.dqn_batch {
            return Err(Error::Config("replay capacity must cover the batch".into()));
        }
        if t.dqn_target_sync == 0 || t.dqn_train_every == 0 || t.dqn_episodes_per_epoch == 0 {
            return Err(Error::Config("dqn cadence values must be >= 1".into()));
        }
        if t.eval_drops == 0 {
            return Err(Error::Config("eval_drops must be >= 1".into()));
        }
        let o = &self.oracle;
        if o.trials == 0 || o.min_pass > o.trials || !(0.0..=1.0).contains(&o.reward_fraction) {
            return Err(Error::Config("bad oracle suite parameters".into()));
        }
        if self.run.seeds.is_empty() {
            return Err(Error::Config("seeds list must be non-empty".into()));
        }
        Ok(())
    }

    /// Canonical text form; `from_text(dump())` reparses to an equal value.
    pub fn dump(&self) -> String {
        let s = &self.scenario;
        let r = &self.radio;
        let g = &self.snr;
        let w = &self.reward;
        let c = &self.condition;
        let t = &self.training;
        let o = &self.oracle;
        format!(
            "[scenario]\n\
             num_users = {}\nnum_experts = {}\nquota = {}\n\
             \n[radio]\n\
             carrier_freq_hz = {}\ndist_min_m = {}\ndist_max_m = {}\n\
             num_antennas = {}\npath_loss_exponent = {}\ncommon_power_fraction = {}\n\
             \n[snr]\nmin_db = {}\nmax_db = {}\nstep_db = {}\n\
             \n[reward]\n\
             lambda_energy = {}\nlambda_compute = {}\npayload_bits = {}\n\
             bandwidth_hz = {}\nr_req = {}\naffinity_seed = {}\n\
             \n[condition]\n\
             gain_db_mean = {}\ngain_db_scale = {}\nsnr_mean_db = {}\n\
             snr_scale_db = {}\naffinity_mean = {}\naffinity_scale = {}\n\
             \n[training]\n\
             epochs = {}\nbatch_size = {}\nlearning_rate = {}\ndiffusion_steps = {}\n\
             hidden_dims = {}\ndqn_learning_rate = {}\ndqn_buffer_capacity = {}\n\
             dqn_batch = {}\ndqn_target_sync = {}\ndqn_eps_start = {}\ndqn_eps_end = {}\n\
             dqn_warmup = {}\ndqn_episodes_per_epoch = {}\ndqn_train_every = {}\n\
             eval_drops = {}\n\
             \n[oracle]\nepochs = {}\ntrials = {}\nreward_fraction = {}\nmin_pass = {}\n\
             \n[run]\nseeds = {}\nout_dir = {}\n",
            s.num_users,
            s.num_experts,
            s.quota,
            r.carrier_freq_hz,
            r.dist_min_m,
            r.dist_max_m,
            r.num_antennas,
            r.path_loss_exponent,
            r.common_power_fraction,
            g.min_db,
            g.max_db,
            g.step_db,
            w.lambda_energy,
            w.lambda_compute,
            w.payload_bits,
            w.bandwidth_hz,
            w.r_req,
            w.affinity_seed,
            c.gain_db_mean,
            c.gain_db_scale,
            c.snr_mean_db,
            c.snr_scale_db,
            c.affinity_mean,
            c.affinity_scale,
            t.epochs,
            t.batch_size,
            t.learning_rate,
            fmt_list(&t.diffusion_steps),
            fmt_list(&t.hidden_dims),
            t.dqn_learning_rate,
            t.dqn_buffer_capacity,
            t.dqn_batch,
            t.dqn_target_sync,
            t.dqn_eps_start,
            t.dqn_eps_end,
            t.dqn_warmup,
            t.dqn_episodes_per_epoch,
            t.dqn_train_every,
            t.eval_drops,
            o.epochs,
            o.trials,
            o.reward_fraction,
            o.min_pass,
            fmt_list(&self.run.seeds),
            self.run.out_dir,
        )
    }

    /// Hex SHA-256 of the canonical dump; recorded in run manifests.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(self.dump().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn unknown_key<T>(key: &str, line: usize) -> Result<T> {
    Err(Error::Parse { line, msg: format!("unknown key {key:?}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_all_defaults() {
        let cfg = ExperimentConfig::from_text("").unwrap();
        assert_eq!(cfg, ExperimentConfig::default());
        assert_eq!(cfg.scenario.num_users, 15);
        assert_eq!(cfg.scenario.num_experts, 6);
        assert_eq!(cfg.training.epochs, 200);
        assert_eq!(cfg.training.diffusion_steps, vec![3, 6]);
        assert_eq!(cfg.snr.points().len(), 9);
        assert_eq!(cfg.snr.mid_db(), 10.0);
    }

    #[test]
    fn descending_snr_grid_is_rejected() {
        let err = ExperimentConfig::from_text("[snr]\nmax_db = -20\n").unwrap_err();
        assert!(err.to_string().contains("below min"));
    }

    #[test]
    fn unknown_keys_are_rejected_with_line_numbers() {
        let err = ExperimentConfig::from_text("[scenario]\nnum_users = 4\nbogus = 1\n").unwrap_err();
        match err {
            Error::Parse { line, msg } => {
                assert_eq!(line, 3);
                assert!(msg.contains("bogus"));
            }
            other => panic!("expected parse error, got {other}"),
        }
        assert!(ExperimentConfig::from_text("[nonsense]\n").is_err());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = ExperimentConfig::from_text("[scenario]\nnum_users 4\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other}"),
        }
    }

    #[test]
    fn comments_and_blanks_are_ignored() {
        let cfg = ExperimentConfig::from_text(
            "# header\n\n[scenario]\nnum_users = 4 # inline\n\n# trailing\n",
        )
        .unwrap();
        assert_eq!(cfg.scenario.num_users, 4);
    }

    #[test]
    fn dump_round_trip_equals() {
        let mut cfg = ExperimentConfig::default();
        cfg.scenario.num_users = 7;
        cfg.radio.carrier_freq_hz = 3.5e9;
        cfg.snr.step_db = 10.0;
        cfg.training.diffusion_steps = vec![2, 4, 8];
        cfg.run.seeds = vec![9, 8, 7];
        cfg.run.out_dir = "results/x".into();
        let re = ExperimentConfig::from_text(&cfg.dump()).unwrap();
        assert_eq!(cfg, re);
        assert_eq!(cfg.hash(), re.hash());
    }

    #[test]
    fn dump_round_trip_over_generated_configs() {
        // A light generative sweep over valid numeric mutations.
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            rng_state = crate::seeding::splitmix64(rng_state);
            rng_state
        };
        for _ in 0..50 {
            let mut cfg = ExperimentConfig::default();
            cfg.scenario.num_users = 1 + (next() % 16) as usize;
            cfg.scenario.num_experts = 1 + (next() % 6) as usize;
            cfg.scenario.quota = 1 + (next() as usize % cfg.scenario.num_experts.min(3));
            cfg.radio.num_antennas = cfg.scenario.num_users.max(1 + (next() % 32) as usize);
            cfg.training.epochs = 1 + (next() % 500) as usize;
            cfg.training.learning_rate = 10f64.powi(-((next() % 5) as i32));
            cfg.snr.min_db = -(next() % 20) as f64;
            cfg.snr.max_db = (next() % 40) as f64;
            cfg.run.seeds = (0..1 + next() % 6).collect();
            cfg.validate().unwrap();
            let re = ExperimentConfig::from_text(&cfg.dump()).unwrap();
            assert_eq!(cfg, re);
        }
    }

    #[test]
    fn quota_exceeding_experts_is_rejected() {
        let err = ExperimentConfig::from_text("[scenario]\nnum_experts = 2\nquota = 3\n");
        assert!(err.is_err());
    }
}
