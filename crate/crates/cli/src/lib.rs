//! Front end for `fefferman-core`: structure files, polynomial expressions
//! and report documents.

pub mod expr;
pub mod render;
pub mod structure;

pub use expr::{parse_poly, ExprError};
pub use render::{RunDocument, DocumentError};
pub use structure::{parse_structure, read_structure, Structure, StructureError};
