//! JSON form of a built group, used as an on-disk cache.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "2T",
//!   "kind": {"binary_polyhedral": {"l": 2, "m": 3, "n": 3}},
//!   "elements": [[w, x, y, z], ...],          // each coordinate {"num": [...32 strings], "den": "..."}
//!   "mult_table": [[...], ...],                // mult_table[a][b] = index of a·b
//!   "generators": [{"name": "R", "index": 5, "order": 4}, ...],
//!   "classes": [{"label": "E", "aliases": [], "members": [0], "representative": 0, "element_order": 1}, ...]
//! }
//! ```

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ConjugacyClass, FiniteGroup, Generator, GroupKind, Quat};
use crate::error::{Error, Result};
use crate::exactnum::{CycloNum, CycloWire};

pub const GROUP_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupDocument {
    pub schema_version: u32,
    pub name: String,
    pub kind: GroupKind,
    pub elements: Vec<[CycloWire; 4]>,
    pub mult_table: Vec<Vec<u32>>,
    pub generators: Vec<Generator>,
    pub classes: Vec<ConjugacyClass>,
}

impl GroupDocument {
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        GroupDocument {
            schema_version: GROUP_SCHEMA_VERSION,
            name: g.name().to_string(),
            kind: g.kind(),
            elements: g
                .elements()
                .iter()
                .map(|q| [q.w.to_wire(), q.x.to_wire(), q.y.to_wire(), q.z.to_wire()])
                .collect(),
            mult_table: (0..n)
                .map(|a| (0..n).map(|b| g.mul(a, b) as u32).collect())
                .collect(),
            generators: g.generators().to_vec(),
            classes: g.classes().to_vec(),
        }
    }

    /// Rebuilds the group, checking the stored table against the quaternion products
    /// by every generator and recomputing classes.
    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.schema_version != GROUP_SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "group document schema {} (expected {GROUP_SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let size = self.elements.len();
        let elements = self
            .elements
            .iter()
            .map(|c| {
                let [w, x, y, z] = [&c[0], &c[1], &c[2], &c[3]].map(CycloNum::from_wire);
                let q = Quat::new(w?, x?, y?, z?);
                if q.is_unit() {
                    Ok(q)
                } else {
                    Err(Error::Parse("element is not a unit quaternion".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let lookup: HashMap<Quat, usize> =
            elements.iter().cloned().enumerate().map(|(i, q)| (q, i)).collect();
        if lookup.len() != size || self.mult_table.len() != size {
            return Err(Error::Parse("duplicate elements or table size mismatch".into()));
        }
        let mut table = Vec::with_capacity(size * size);
        for row in &self.mult_table {
            if row.len() != size || row.iter().any(|&v| v as usize >= size) {
                return Err(Error::Parse("malformed multiplication table row".into()));
            }
            table.extend_from_slice(row);
        }
        for gen in &self.generators {
            let q = elements
                .get(gen.index)
                .ok_or_else(|| Error::Parse(format!("generator {} out of range", gen.name)))?;
            for (a, qa) in elements.iter().enumerate() {
                if lookup.get(&(qa * q)) != Some(&(table[a * size + gen.index] as usize)) {
                    return Err(Error::Parse("multiplication table disagrees with elements".into()));
                }
            }
        }
        let gens = self.generators.iter().map(|g| (g.name.clone(), g.index)).collect();
        let group = FiniteGroup::assemble(&self.name, self.kind, elements, lookup, table, gens)?;
        if group.classes() != self.classes.as_slice() {
            return Err(Error::Parse("stored class partition disagrees with the table".into()));
        }
        Ok(group)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string(self)?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GeneratorChoice;

    #[test]
    fn round_trip() {
        let g = FiniteGroup::binary_polyhedral(4, GeneratorChoice::Standard).unwrap();
        let doc = g.to_document();
        let text = serde_json::to_string(&doc).unwrap();
        let back: GroupDocument = serde_json::from_str(&text).unwrap();
        let h = back.into_group().unwrap();
        assert_eq!(h.order(), g.order());
        assert_eq!(h.classes(), g.classes());
        assert_eq!(h.elements(), g.elements());
    }

    #[test]
    fn corrupted_table_rejected() {
        let g = FiniteGroup::binary_polyhedral(3, GeneratorChoice::Standard).unwrap();
        let mut doc = g.to_document();
        let gi = doc.generators[0].index;
        doc.mult_table[0].swap(gi, (gi + 1) % 24);
        assert!(doc.into_group().is_err());
    }
}
