//! Regenerates the frozen fixtures under fixtures/ after a deliberate
//! catalogue change. Run from the repository root:
//!
//!     cargo run -p weyl-cells --example emit_fixtures

use weyl_cells::tables::{emit_table, TableId};

fn main() {
    for (id, name) in [
        (TableId::SousReguliers, "sous_reguliers"),
        (TableId::SousSous, "sous_sous"),
        (TableId::Rang2, "rang2"),
    ] {
        let out = emit_table(id, "tsv", 2).unwrap();
        let path = format!("crates/weyl-cells/fixtures/{name}.tsv");
        std::fs::write(&path, out).unwrap();
        println!("wrote {path}");
    }
}
