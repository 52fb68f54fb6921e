//! JSON file formats. Fractions always travel as `"p/q"` strings.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize, Serializer};

use crate::character::CharacterTable;
use crate::circle::{CircleElement, CyclotomicValue};
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_CLOSURE_CAP};
use crate::induced::MonomialMatrix;
use crate::library;
use crate::transgression::{TransgressedCocycle, TransgressionKind};

pub fn ser_display<T: Display, S: Serializer>(value: &T, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

/// Either a multiplication table or permutation generators; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupFile {
    Table { order: usize, mul: Vec<Vec<usize>> },
    Permutations { perm_generators: Vec<Vec<usize>> },
}

impl GroupFile {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupFile::Table { order, mul } => {
                if mul.len() != *order {
                    return Err(Error::MalformedTable {
                        row: mul.len().min(*order),
                        col: 0,
                    });
                }
                FiniteGroup::from_table(mul)
            }
            GroupFile::Permutations { perm_generators } => {
                FiniteGroup::from_permutations(perm_generators, DEFAULT_CLOSURE_CAP)
            }
        }
    }

    pub fn from_group(group: &FiniteGroup) -> Self {
        GroupFile::Table {
            order: group.order(),
            mul: group.table(),
        }
    }
}

/// The `"group"` field of a cochain file: a path, a builtin name or an inline table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Inline(GroupFile),
}

impl GroupRef {
    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<FiniteGroup> {
        match self {
            GroupRef::Inline(file) => file.build(),
            GroupRef::Name(name) => {
                let relative = base_dir.map(|d| d.join(name)).filter(|p| p.is_file());
                match relative {
                    Some(path) => parse_group_file(&path),
                    None => resolve_group(name),
                }
            }
        }
    }
}

fn parse_error(path: &Path, e: impl Display) -> Error {
    Error::Parse(format!("{}: {e}", path.display()))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| parse_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| parse_error(path, e))
}

pub fn parse_group_file(path: &Path) -> Result<FiniteGroup> {
    read_json::<GroupFile>(path)?.build()
}

/// An existing file path takes precedence over a builtin name.
pub fn resolve_group(arg: &str) -> Result<FiniteGroup> {
    let path = Path::new(arg);
    if path.is_file() {
        return parse_group_file(path);
    }
    library::builtin(arg).ok_or_else(|| Error::Parse(format!("{arg:?} is neither a group file nor a builtin group")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainFile {
    pub group: GroupRef,
    pub arity: usize,
    pub values: Vec<String>,
}

impl CochainFile {
    pub fn from_cochain(cochain: &Cochain, group: GroupRef) -> Self {
        CochainFile {
            group,
            arity: cochain.arity(),
            values: cochain.values().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn build(&self, base_dir: Option<&Path>) -> Result<Cochain> {
        let group = self.group.resolve(base_dir)?;
        let values = self
            .values
            .iter()
            .map(|v| v.parse())
            .collect::<Result<Vec<CircleElement>>>()?;
        Cochain::from_values(&group, self.arity, values)
    }
}

/// Relative group paths inside the file resolve against the file's directory.
pub fn read_cochain(path: &Path) -> Result<Cochain> {
    let file: CochainFile = read_json(path)?;
    let base: Option<PathBuf> = path.parent().map(Path::to_path_buf);
    file.build(base.as_deref())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub tuple: Vec<usize>,
    pub value: Vec<[String; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterFile {
    pub arity: usize,
    pub entries: Vec<CharacterEntry>,
}

impl CharacterFile {
    pub fn from_table(table: &CharacterTable) -> Self {
        CharacterFile {
            arity: table.arity(),
            entries: table
                .entries()
                .map(|(t, v)| CharacterEntry {
                    tuple: t.clone(),
                    value: v.to_string_pairs(),
                })
                .collect(),
        }
    }

    pub fn build(&self, group: &FiniteGroup) -> Result<CharacterTable> {
        let mut entries = BTreeMap::new();
        for entry in &self.entries {
            entries.insert(entry.tuple.clone(), CyclotomicValue::from_string_pairs(&entry.value)?);
        }
        CharacterTable::from_entries(group, self.arity, entries)
    }
}

pub fn read_character(path: &Path, group: &FiniteGroup) -> Result<CharacterTable> {
    read_json::<CharacterFile>(path)?.build(group)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialFile {
    pub size: usize,
    pub pi: Vec<usize>,
    pub labels: Vec<usize>,
}

impl From<&MonomialMatrix> for MonomialFile {
    fn from(m: &MonomialMatrix) -> Self {
        MonomialFile {
            size: m.size(),
            pi: m.pi.clone(),
            labels: m.labels.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransgressionSidecar {
    pub base: usize,
    pub kind: String,
    pub centralizer: Vec<usize>,
}

impl TransgressionSidecar {
    pub fn from_transgression(t: &TransgressedCocycle) -> Self {
        let kind = match t.kind() {
            TransgressionKind::Gamma => "gamma",
            TransgressionKind::Willerton => "willerton",
        };
        TransgressionSidecar {
            base: t.base(),
            kind: kind.to_owned(),
            centralizer: t.centralizer().elements().to_vec(),
        }
    }
}
