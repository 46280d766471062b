//! The emitted tables are byte-frozen: regenerating them must reproduce the
//! checked-in fixtures exactly. Regenerate with the emit_fixtures example
//! after a deliberate catalogue change.

use weyl_cells::tables::{emit_table, TableId};

fn check(id: TableId, frozen: &str) {
    let fresh = emit_table(id, "tsv", 2).unwrap();
    assert_eq!(fresh, frozen, "fixture drift for {id}");
}

#[test]
fn sous_reguliers_frozen() {
    check(
        TableId::SousReguliers,
        include_str!("../fixtures/sous_reguliers.tsv"),
    );
}

#[test]
fn sous_sous_frozen() {
    check(TableId::SousSous, include_str!("../fixtures/sous_sous.tsv"));
}

#[test]
fn rang2_frozen() {
    check(TableId::Rang2, include_str!("../fixtures/rang2.tsv"));
}
