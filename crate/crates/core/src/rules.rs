// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The ACE Forum Authors

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::graph::VertexKind;

/// Metadata shared by every application of one rule.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RuleMeta {
    pub kind: VertexKind,
    /// Only meaningful for preference rules.
    pub transitive: bool,
    pub description: String,
}

/// Rule metadata keyed by rule id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleCatalog {
    rules: BTreeMap<String, RuleMeta>,
}

impl RuleCatalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts or replaces a rule. Returns the previous entry if any.
    pub fn insert(&mut self, rule_id: impl Into<String>, meta: RuleMeta) -> Option<RuleMeta> {
        self.rules.insert(rule_id.into(), meta)
    }

    pub fn declare(
        &mut self,
        rule_id: impl Into<String>,
        kind: VertexKind,
        transitive: bool,
        description: impl Into<String>,
    ) {
        self.insert(
            rule_id,
            RuleMeta {
                kind,
                transitive,
                description: description.into(),
            },
        );
    }

    pub fn get(&self, rule_id: &str) -> Option<&RuleMeta> {
        self.rules.get(rule_id)
    }

    pub fn is_transitive(&self, rule_id: &str) -> Option<bool> {
        self.rules.get(rule_id).map(|m| m.transitive)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Rules in rule id order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &RuleMeta)> {
        self.rules.iter().map(|(k, v)| (k.as_str(), v))
    }
}

impl<K: Into<String>> FromIterator<(K, RuleMeta)> for RuleCatalog {
    fn from_iter<T: IntoIterator<Item = (K, RuleMeta)>>(iter: T) -> Self {
        Self {
            rules: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}
