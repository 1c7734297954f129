//! Library side of the `coxtr` command: counting, tables, verification runs
//! and report rendering. `main.rs` only parses arguments and maps errors to
//! exit codes.

pub mod report;
pub mod table;
pub mod verify;

use std::path::PathBuf;
use std::time::Instant;

use coxeter_traces::cache::GroupCache;
use coxeter_traces::classes::{self, count_brute_force, Strategy, TraceCount};
use coxeter_traces::combinatorics::closed_form_contains_minus_identity;
use coxeter_traces::group::{Group, GroupBudget, DEFAULT_MAX_ORDER};
use coxeter_traces::roots::{Factor, RootSystem, SystemSpec};
use coxeter_traces::{Error, Result};

use report::{ClassRow, ReportRow};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const IO: u8 = 4;
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidParameter { .. } | Error::MatrixFree { .. } | Error::EnumerationBudget { .. } => {
            exit::USAGE
        }
        Error::BudgetExceeded { .. } | Error::HeavyRequired { .. } | Error::TooManyRoots { .. } => exit::BUDGET,
        Error::Io { .. } | Error::CacheFormat { .. } => exit::IO,
        _ => exit::VERIFICATION_FAILED,
    }
}

/// Settings shared by all commands.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub budget: GroupBudget,
    pub cache: Option<GroupCache>,
    pub timing: bool,
}

impl Context {
    /// Budget from the command line. Without the escape hatch the ceiling
    /// never exceeds [`DEFAULT_MAX_ORDER`], so `--heavy` reaches W(E7) but not
    /// W(E8).
    pub fn new(max_order: Option<u64>, heavy: bool, cache_dir: Option<PathBuf>, unsupported_e8: bool) -> Self {
        let mut max_order = max_order.map_or(DEFAULT_MAX_ORDER, u128::from);
        if unsupported_e8 {
            max_order = u128::MAX;
        } else {
            max_order = max_order.min(DEFAULT_MAX_ORDER);
        }
        Context {
            budget: GroupBudget { max_order, allow_heavy: heavy || unsupported_e8 },
            cache: cache_dir.map(GroupCache::new),
            timing: false,
        }
    }

    /// The group of `spec`, through the cache when one is configured.
    pub fn group(&self, spec: &SystemSpec) -> Result<Group> {
        let spec = spec.normalized();
        match &self.cache {
            Some(cache) => cache.get_or_generate(&spec, &self.budget).map(|(g, _)| g),
            None => {
                self.budget.check(&spec.to_string(), spec.group_order())?;
                Group::generate(&RootSystem::from_spec(&spec)?, &self.budget)
            }
        }
    }

    pub fn brute_force_factor(&self, factor: Factor) -> Result<TraceCount> {
        Ok(count_brute_force(&self.group(&SystemSpec::single(factor))?))
    }

    /// −I membership for one factor: from the group engine when the group
    /// fits `budget` and has a matrix model, from the classification otherwise.
    pub fn minus_identity(&self, factor: Factor, budget: &GroupBudget) -> Result<(bool, classes::MinusIdentitySource)> {
        if factor.has_matrix_model() && budget.allows(factor.group_order()) {
            let g = self.group(&SystemSpec::single(factor))?;
            Ok((g.contains_minus_identity(), classes::MinusIdentitySource::GroupEngine))
        } else {
            Ok((closed_form_contains_minus_identity(factor), classes::MinusIdentitySource::Classification))
        }
    }

    pub fn count(&self, spec: &SystemSpec, strategy: Strategy) -> Result<ReportRow> {
        let start = Instant::now();
        // −I comes from the engine for every factor that was enumerated.
        let mut engine = std::collections::HashMap::new();
        let count = classes::count_with(spec, strategy, |f| {
            let g = self.group(&SystemSpec::single(f))?;
            engine.insert(f, g.contains_minus_identity());
            Ok(count_brute_force(&g))
        })?;
        let minus_identity =
            spec.factors.iter().all(|f| engine.get(f).copied().unwrap_or_else(|| closed_form_contains_minus_identity(*f)));
        let mut row = ReportRow::new(spec.to_string(), count, spec.group_order(), Some(minus_identity));
        if self.timing {
            row.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        Ok(row)
    }

    pub fn classes(&self, spec: &SystemSpec) -> Result<Vec<ClassRow>> {
        let system = RootSystem::from_spec(&spec.normalized())?;
        if system.is_matrix_free() {
            return Err(Error::MatrixFree { label: spec.to_string() });
        }
        let group = self.group(spec)?;
        Ok(classes::conjugacy_classes(&group)
            .into_iter()
            .enumerate()
            .map(|(i, c)| ClassRow {
                class_index: i,
                size: c.size,
                det: c.det.to_string(),
                char_poly: c.char_poly.to_string(),
                has_plus_one: c.has_plus_one,
                has_minus_one: c.has_minus_one,
            })
            .collect())
    }
}

pub fn parse_spec(input: &str) -> Result<SystemSpec> {
    input.parse()
}
