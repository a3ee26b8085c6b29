//! The verification pipeline and conjecture scans behind the `posaudit` CLI.
//!
//! Everything here is deterministic: reports list claims, rows and
//! violations in a fixed order and contain no timing data unless asked.

mod claims;
mod report;
mod scans;

pub use claims::{verify_claims, Claim6Breakdown, Claim6Subset, ClaimResult, Headline, LambdaRun, VerifyOptions};
pub use report::{
    character_table_report, scan_report, verify_report, AuditReport, ConstructiveRow, GroupSummary, TableCheck,
    TableMatch,
};
pub use scans::{
    odd_rule_scan, positivity_scan, recheck_violation, run_scans, wang_scan, Conjecture, ScanResults, Violation,
};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::character::{
    constructive_characters, elementary_abelian_characters, q8_irreducibles, CharacterError, ClassStructure,
    ConstructiveCharacter,
};
use crate::construction::{build_g, ConstructionError, Counterexample, Q8Embedding};
use crate::group::{parse_group_description, q8_group, FiniteGroup, GroupDescription, GroupError, ParseError};

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("unknown group source '{0}' (expected builtin:g128, builtin:q8, builtin:h16 or file:<path>)")]
    UnknownSource(String),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("group of order {order} exceeds the size cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Character(#[from] CharacterError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinGroup {
    G128,
    Q8,
    H16,
}

impl BuiltinGroup {
    pub const ALL: [BuiltinGroup; 3] = [BuiltinGroup::G128, BuiltinGroup::Q8, BuiltinGroup::H16];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGroup::G128 => "g128",
            BuiltinGroup::Q8 => "q8",
            BuiltinGroup::H16 => "h16",
        }
    }

    pub fn order(self) -> usize {
        match self {
            BuiltinGroup::G128 => 128,
            BuiltinGroup::Q8 => 8,
            BuiltinGroup::H16 => 16,
        }
    }
}

/// Where a group comes from: `builtin:<name>` or `file:<path>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Builtin(BuiltinGroup),
    File(PathBuf),
}

impl FromStr for GroupSource {
    type Err = AuditError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(name) = s.strip_prefix("builtin:") {
            return BuiltinGroup::ALL
                .into_iter()
                .find(|b| b.name() == name)
                .map(GroupSource::Builtin)
                .ok_or_else(|| AuditError::UnknownSource(s.to_string()));
        }
        match s.strip_prefix("file:") {
            Some(path) if !path.is_empty() => Ok(GroupSource::File(PathBuf::from(path))),
            _ => Err(AuditError::UnknownSource(s.to_string())),
        }
    }
}

impl fmt::Display for GroupSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSource::Builtin(b) => write!(f, "builtin:{}", b.name()),
            GroupSource::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

/// What is known about a loaded group beyond its multiplication table.
pub enum GroupKind {
    /// `F₂⁴ ⋊ Q₈` with a faithful action; the claims pipeline applies.
    Counterexample(Box<Counterexample>),
    /// The labelled quaternion group.
    Q8,
    /// An XOR-labelled elementary abelian 2-group.
    ElementaryAbelian,
    Plain,
}

pub struct LoadedGroup {
    pub descriptor: String,
    pub kind: GroupKind,
    pub ctx: Arc<ClassStructure>,
}

impl LoadedGroup {
    pub fn group(&self) -> &FiniteGroup {
        self.ctx.group()
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match &self.kind {
            GroupKind::Counterexample(cx) => Some(cx),
            _ => None,
        }
    }

    pub fn has_constructive(&self) -> bool {
        !matches!(self.kind, GroupKind::Plain)
    }

    /// Characters built without the Dixon table, and whether they form a
    /// complete set of irreducibles.
    pub fn constructive_characters(&self) -> Result<(Vec<ConstructiveCharacter>, bool), AuditError> {
        match &self.kind {
            GroupKind::Counterexample(cx) => {
                let lambda = cx.choose_lambda()?;
                Ok((constructive_characters(cx, &self.ctx, &lambda)?, false))
            }
            GroupKind::Q8 => Ok((q8_irreducibles(&self.ctx)?, true)),
            GroupKind::ElementaryAbelian => Ok((elementary_abelian_characters(&self.ctx)?, true)),
            GroupKind::Plain => Err(AuditError::Unsupported(format!(
                "no constructive characters are available for {}",
                self.descriptor
            ))),
        }
    }
}

impl GroupSource {
    /// Builds the group, refusing orders above `cap`.
    pub fn load(&self, cap: usize) -> Result<LoadedGroup, AuditError> {
        let descriptor = self.to_string();
        let (group, kind) = match self {
            GroupSource::Builtin(b) => {
                if b.order() > cap {
                    return Err(AuditError::TooLarge { order: b.order(), cap });
                }
                match b {
                    BuiltinGroup::G128 => {
                        let cx = Counterexample::canonical();
                        (cx.group().clone(), GroupKind::Counterexample(Box::new(cx)))
                    }
                    BuiltinGroup::Q8 => (q8_group(), GroupKind::Q8),
                    BuiltinGroup::H16 => (FiniteGroup::elementary_abelian(4), GroupKind::ElementaryAbelian),
                }
            }
            GroupSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| AuditError::Io {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                let parse_err = |source| AuditError::Parse {
                    path: path.clone(),
                    source,
                };
                let description = parse_group_description(&text).map_err(parse_err)?;
                let group = description.build(cap).map_err(parse_err)?;
                let kind = quaternion_action(&description)
                    .and_then(|rho| build_g(&rho).ok())
                    .map_or(GroupKind::Plain, |cx| GroupKind::Counterexample(Box::new(cx)));
                match kind {
                    // Rebuilt on the canonical labelling so that element
                    // indices in reports mean the same thing as for g128.
                    GroupKind::Counterexample(cx) => (cx.group().clone(), GroupKind::Counterexample(cx)),
                    kind => (group, kind),
                }
            }
        };
        Ok(LoadedGroup {
            descriptor,
            kind,
            ctx: ClassStructure::new(group),
        })
    }
}

/// A `semidirect-gf2` description with two generators realising Q₈.
fn quaternion_action(description: &GroupDescription) -> Option<Q8Embedding> {
    match description {
        GroupDescription::SemidirectGf2 { generators, .. } if generators.len() == 2 => {
            Q8Embedding::from_generators(generators[0].1, generators[1].1).ok()
        }
        _ => None,
    }
}

/// Which path produces the characters used by a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableMethod {
    Dixon,
    Constructive,
    #[default]
    Both,
}

impl TableMethod {
    pub fn uses_dixon(self) -> bool {
        self != TableMethod::Constructive
    }

    pub fn uses_constructive(self) -> bool {
        self != TableMethod::Dixon
    }

    pub fn name(self) -> &'static str {
        match self {
            TableMethod::Dixon => "dixon",
            TableMethod::Constructive => "constructive",
            TableMethod::Both => "both",
        }
    }
}
