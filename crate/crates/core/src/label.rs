// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use core::fmt;
use core::str::FromStr;

use crate::graph::VertexKind;

/// Acceptability label of a vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CLabel {
    /// Accepted.
    A,
    /// Accepted, but dominated by a preference.
    AD,
    /// Rejected.
    R,
}

impl CLabel {
    pub const ALL: [CLabel; 3] = [CLabel::A, CLabel::AD, CLabel::R];

    pub fn as_str(self) -> &'static str {
        match self {
            CLabel::A => "A",
            CLabel::AD => "AD",
            CLabel::R => "R",
        }
    }

    /// `A` and `AD` both count as accepted.
    pub fn is_accepted(self) -> bool {
        self != CLabel::R
    }

    fn rank(self) -> u8 {
        match self {
            CLabel::A => 0,
            CLabel::AD => 1,
            CLabel::R => 2,
        }
    }
}

impl fmt::Display for CLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CLabel {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "A" => Ok(CLabel::A),
            "AD" => Ok(CLabel::AD),
            "R" => Ok(CLabel::R),
            _ => Err(()),
        }
    }
}

/// Collapses the labels propagated into one vertex: any `R` wins, then any
/// `AD`, otherwise `A`. An empty input yields `A`.
pub fn overrule(labels: impl IntoIterator<Item = CLabel>) -> CLabel {
    labels
        .into_iter()
        .max_by_key(|l| l.rank())
        .unwrap_or(CLabel::A)
}

/// How a line relates to the rule application at one of its ends.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LineRole {
    /// The source is an antecedent of the target application.
    Input,
    /// The target is a consequent of the source application. Synthetic
    /// lines are read this way.
    Output,
}

/// Classifies a line from its parameter memberships. Exactly one must hold.
pub fn line_role(source_is_antecedent: bool, target_is_consequent: bool) -> Option<LineRole> {
    match (source_is_antecedent, target_is_consequent) {
        (true, false) => Some(LineRole::Input),
        (false, true) => Some(LineRole::Output),
        _ => None,
    }
}

/// The label carried along one line, or `None` where no line of that shape
/// is allowed.
///
/// Antecedents pass acceptance on to the application they feed; a
/// dominated premise still counts as accepted there. Applications pass their
/// own label to their consequents according to their kind: inferences keep
/// it, conflicts invert it and preferences mark the dominated side `AD`.
pub fn propagation_rule(
    source: VertexKind,
    target: VertexKind,
    role: LineRole,
    label: CLabel,
) -> Option<CLabel> {
    use CLabel::*;
    match role {
        LineRole::Input => {
            if !target.is_rule_application() {
                return None;
            }
            Some(match label {
                A | AD => A,
                R => R,
            })
        }
        LineRole::Output => match source {
            VertexKind::Information => None,
            VertexKind::Inference => Some(match label {
                A | AD => A,
                R => R,
            }),
            VertexKind::Conflict => Some(match label {
                A | AD => R,
                R => A,
            }),
            VertexKind::Preference => Some(match label {
                A | AD => AD,
                R => A,
            }),
        },
    }
}
