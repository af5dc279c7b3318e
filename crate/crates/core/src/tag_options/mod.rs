//! Tag lattices, options lattices, φ transport and the tag–options lattice.
//!
//! A tag set `T′ ⊆ T` is ordered by reverse inclusion (more known tags is
//! more specific). For each `T′` the options lattice holds total maps from
//! `T′` to subsets of the option universe `O`, ordered pointwise. φ moves an
//! options element between tag sets, padding unknown tags with `O`; the
//! tag–options lattice pairs a tag set with an options element over it.

mod hasse;
mod homomorphism;
mod options;
mod tol;

use std::sync::Arc;

pub use hasse::{hasse_diagram, hasse_export, HasseDiagram, DEFAULT_RENDER_BOUND};
pub use homomorphism::{check_homomorphism, check_homomorphism_with, HomomorphismConfig, PhiFn};
pub use options::{options_join, options_leq, options_meet, phi, OptionsElement, OptionsLattice};
pub use tol::{tag_lattice, tol_join, tol_leq, tol_meet, TagOptionsElement, TagOptionsLattice};

use crate::error::{Error, Result};
use crate::lattice::{SmallSet, MAX_ATOMS};

/// A subset of a [`TagUniverse`], by tag index.
pub type TagSet = SmallSet;
/// A subset of an [`OptionUniverse`], by option index.
pub type OptionSet = SmallSet;

fn validate_names(kind: &str, names: Vec<String>) -> Result<Arc<[String]>> {
    if names.len() > MAX_ATOMS {
        return Err(Error::capacity(
            format!("{kind} universe"),
            names.len() as u128,
            MAX_ATOMS as u128,
        ));
    }
    for (i, n) in names.iter().enumerate() {
        if n.is_empty() {
            return Err(Error::Validation(format!("empty {kind} name")));
        }
        if names[..i].contains(n) {
            return Err(Error::Validation(format!("duplicate {kind} `{n}`")));
        }
    }
    Ok(names.into())
}

fn lookup(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

/// The finite, ordered tag set `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagUniverse {
    names: Arc<[String]>,
}

impl TagUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names = validate_names("tag", names.into_iter().map(Into::into).collect())?;
        Ok(TagUniverse { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, tag: usize) -> &str {
        &self.names[tag]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        lookup(&self.names, name)
    }

    pub fn full(&self) -> TagSet {
        SmallSet::full(self.len())
    }

    pub fn set<S: AsRef<str>>(&self, names: &[S]) -> Result<TagSet> {
        names.iter().map(|n| self.index(n.as_ref())).collect()
    }

    pub fn render_set(&self, set: TagSet) -> String {
        render_set(&self.names, set)
    }
}

/// The finite option set `O`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptionUniverse {
    names: Arc<[String]>,
}

impl OptionUniverse {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names = validate_names("option", names.into_iter().map(Into::into).collect())?;
        Ok(OptionUniverse { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, option: usize) -> &str {
        &self.names[option]
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        lookup(&self.names, name)
    }

    pub fn full(&self) -> OptionSet {
        SmallSet::full(self.len())
    }

    pub fn set<S: AsRef<str>>(&self, names: &[S]) -> Result<OptionSet> {
        names.iter().map(|n| self.index(n.as_ref())).collect()
    }

    pub fn render_set(&self, set: OptionSet) -> String {
        render_set(&self.names, set)
    }
}

pub(crate) fn render_set(names: &[String], set: SmallSet) -> String {
    if set.is_empty() {
        "∅".to_string()
    } else {
        let parts: Vec<&str> = set.iter().map(|i| names[i].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A tag universe together with an option universe; the context every
/// options and tag–options operation runs in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TagOptionsSpace {
    pub tags: TagUniverse,
    pub options: OptionUniverse,
}

impl TagOptionsSpace {
    pub fn new(tags: TagUniverse, options: OptionUniverse) -> Self {
        TagOptionsSpace { tags, options }
    }

    pub fn from_names<S: Into<String>, U: Into<String>>(
        tags: impl IntoIterator<Item = S>,
        options: impl IntoIterator<Item = U>,
    ) -> Result<Self> {
        Ok(TagOptionsSpace::new(
            TagUniverse::new(tags)?,
            OptionUniverse::new(options)?,
        ))
    }

    /// Builds an options element from `(tag, options)` pairs; the domain is
    /// the set of listed tags and each tag must appear exactly once.
    pub fn options_element<S: AsRef<str>>(&self, pairs: &[(&str, &[S])]) -> Result<OptionsElement> {
        let mut domain = TagSet::EMPTY;
        let mut assigned = Vec::with_capacity(pairs.len());
        for (tag, opts) in pairs {
            let t = self.tags.index(tag)?;
            if domain.contains(t) {
                return Err(Error::Validation(format!("tag `{tag}` assigned twice")));
            }
            domain = domain.with(t);
            assigned.push((t, self.options.set(opts)?));
        }
        OptionsElement::new(self, domain, assigned)
    }

    /// `(T′, f)` where `T′` is the set of tags listed in `pairs`.
    pub fn tag_options<S: AsRef<str>>(&self, pairs: &[(&str, &[S])]) -> Result<TagOptionsElement> {
        Ok(TagOptionsElement::new(self.options_element(pairs)?))
    }
}
