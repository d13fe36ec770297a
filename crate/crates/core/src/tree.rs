//! Runtime dispatch over tree-file formats.
//!
//! Every tree kind (marked metric graph, pulled splitting tree) sits behind
//! the [`TreeModel`] trait and registers a parser under the name carried by
//! the JSON document's `"type"` field. The CLI and any embedding code load
//! files through [`TreeRegistry`] and work with `Box<dyn TreeModel>`,
//! downcasting only for kind-specific operations.

use crate::boundary::PulledTree;
use crate::marked_graph::MarkedGraph;
use crate::rational::Rational;
use crate::words::Word;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("document: {0}")]
    Json(String),
    #[error("type: unknown tree type {0:?}; registered types: {1}")]
    UnknownType(String, String),
    #[error("type: missing \"type\" field")]
    MissingType,
    #[error("{0}")]
    Graph(#[from] crate::marked_graph::GraphError),
    #[error("{0}")]
    Tree(#[from] crate::boundary::TreeError),
}

/// Common surface of every tree kind: rank and translation lengths.
pub trait TreeModel {
    fn type_name(&self) -> &'static str;
    fn rank(&self) -> usize;
    fn translation_length(&self, w: &Word) -> Rational;

    fn as_marked_graph(&self) -> Option<&MarkedGraph> {
        None
    }

    fn as_pulled_tree(&self) -> Option<&PulledTree> {
        None
    }
}

impl TreeModel for MarkedGraph {
    fn type_name(&self) -> &'static str {
        "marked_graph"
    }

    fn rank(&self) -> usize {
        MarkedGraph::rank(self)
    }

    fn translation_length(&self, w: &Word) -> Rational {
        MarkedGraph::translation_length(self, w)
    }

    fn as_marked_graph(&self) -> Option<&MarkedGraph> {
        Some(self)
    }
}

impl TreeModel for PulledTree {
    fn type_name(&self) -> &'static str {
        "pulled_tree"
    }

    fn rank(&self) -> usize {
        PulledTree::rank(self)
    }

    fn translation_length(&self, w: &Word) -> Rational {
        PulledTree::translation_length(self, w)
    }

    fn as_pulled_tree(&self) -> Option<&PulledTree> {
        Some(self)
    }
}

pub type TreeParser = fn(&serde_json::Value) -> Result<Box<dyn TreeModel>, LoadError>;

/// Name-keyed parser registry, dispatching on the `"type"` field.
pub struct TreeRegistry {
    parsers: BTreeMap<&'static str, TreeParser>,
}

impl TreeRegistry {
    pub fn empty() -> Self {
        TreeRegistry {
            parsers: BTreeMap::new(),
        }
    }

    /// Registry with the two built-in formats.
    pub fn standard() -> Self {
        let mut reg = Self::empty();
        reg.register("marked_graph", |value| {
            Ok(Box::new(MarkedGraph::from_json_value(value)?) as Box<dyn TreeModel>)
        });
        reg.register("pulled_tree", |value| {
            Ok(Box::new(PulledTree::from_json_value(value)?) as Box<dyn TreeModel>)
        });
        reg
    }

    pub fn register(&mut self, name: &'static str, parser: TreeParser) {
        self.parsers.insert(name, parser);
    }

    pub fn type_names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.parsers.keys().copied()
    }

    pub fn parse_value(&self, value: &serde_json::Value) -> Result<Box<dyn TreeModel>, LoadError> {
        let tag = value
            .get("type")
            .and_then(|t| t.as_str())
            .ok_or(LoadError::MissingType)?;
        let parser = self.parsers.get(tag).ok_or_else(|| {
            LoadError::UnknownType(
                tag.to_owned(),
                self.type_names().collect::<Vec<_>>().join(", "),
            )
        })?;
        parser(value)
    }

    pub fn parse_str(&self, s: &str) -> Result<Box<dyn TreeModel>, LoadError> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| LoadError::Json(e.to_string()))?;
        self.parse_value(&value)
    }
}

impl Default for TreeRegistry {
    fn default() -> Self {
        Self::standard()
    }
}
