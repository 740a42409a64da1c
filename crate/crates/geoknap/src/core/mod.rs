//! Items, packings, validation, JSON I/O and item classification.

mod classify;
mod fit;
mod io;
mod model;
mod validate;

pub use classify::{
    class_of, classify_items, classify_items_default, default_shrink, threshold_chain, ItemClass,
    ItemClasses, Threshold,
};
pub use fit::{fit_in_box, FitOutcome};
pub use io::{
    instance_to_json, load_instance, load_packing, packing_to_json, parse_instance, parse_packing,
    save_instance, save_packing,
};
pub(crate) use io::{parse_json, to_json};
pub use model::{
    first_overlap, placed_is_valid, placed_profit, Instance, Item, ItemId, Packing, Placed,
    Placement, Rect,
};
pub use validate::{validate_packing, ValidationReport, Violation};
