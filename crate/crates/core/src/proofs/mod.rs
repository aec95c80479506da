//! Axiom systems, schema instantiation and derivation checking.

mod corpus;
mod derivation;
mod schema;
mod system;
mod taut;

pub use corpus::CORPUS;
pub use derivation::{check_derivation, parse_derivation, Derivation, DerivationError, Expectation, Justification, Step, Verdict};
pub use schema::{catalog, instantiate_schema, lookup, Group, Instantiation, Schema, SchemaArg, SchemaError};
pub use system::{axiom_inventory, render_inventories, Base, InventoryEntry, SystemName, SystemSpec};
pub use taut::{tautology, TautVerdict, MAX_ATOMS};
