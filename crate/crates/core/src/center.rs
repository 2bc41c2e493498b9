use crate::char_table::{CharacterTable, TableError};
use crate::class_algebra::ClassAlgebra;
use crate::group::{ClassPartition, FiniteGroup};

/// A group together with everything the isomorphism engine reads from it.
#[derive(Debug, Clone)]
pub struct CenterData {
    pub name: String,
    pub group: FiniteGroup,
    pub classes: ClassPartition,
    pub algebra: ClassAlgebra,
    pub table: CharacterTable,
}

impl CenterData {
    pub fn new(name: impl Into<String>, group: FiniteGroup) -> Result<Self, TableError> {
        let classes = group.conjugacy_classes();
        let algebra = ClassAlgebra::new(&group, &classes);
        let table = CharacterTable::compute(&algebra)?;
        Ok(CenterData {
            name: name.into(),
            group,
            classes,
            algebra,
            table,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn class_count(&self) -> usize {
        self.classes.count()
    }
}
