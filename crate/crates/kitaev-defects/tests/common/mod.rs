//! Helpers shared by integration tests: deliberately corrupted inflation
//! rules.

use kitaev_defects::inflation::{InflationTable, WallKind, STANDARD_RULES};
use kitaev_defects::tubes::Defect;

/// `(rule line prefix, original fragment, mutated fragment, left factor, right factor)`.
pub const MUTATIONS: [(&str, &str, &str, WallKind, WallKind); 4] = [
    (
        "F  | X * F    | a",
        "omega(-n*g*h)",
        "omega(n*g*h)",
        WallKind::X,
        WallKind::F,
    ),
    (
        "X  | F * F    | b",
        "(q*a - r*h)",
        "(q*a + r*h)",
        WallKind::F,
        WallKind::F,
    ),
    (
        "R  | R * X    | a",
        "| l*h",
        "| -l*h",
        WallKind::R,
        WallKind::X,
    ),
    (
        "F  | F * X    | a",
        "| l*h",
        "| -l*h",
        WallKind::F,
        WallKind::X,
    ),
];

pub fn mutate(prefix: &str, from: &str, to: &str) -> String {
    let mut hits = 0;
    let text: Vec<String> = STANDARD_RULES
        .lines()
        .map(|line| {
            if line.starts_with(prefix) && line.contains(from) {
                hits += 1;
                line.replacen(from, to, 1)
            } else {
                line.to_string()
            }
        })
        .collect();
    assert_eq!(hits, 1, "mutation target `{prefix}` not unique");
    text.join("\n")
}

/// Pairs whose bottom or top walls factor as `left (x) right`.
pub fn affected_pairs(
    defects: &[Defect],
    left: WallKind,
    right: WallKind,
) -> Vec<(Defect, Defect)> {
    let hit = |a: &Defect, b: &Defect| {
        (WallKind::of(a.bottom), WallKind::of(b.bottom)) == (left, right)
            || (WallKind::of(a.top), WallKind::of(b.top)) == (left, right)
    };
    let mut out = Vec::new();
    for a in defects {
        for b in defects {
            if hit(a, b) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    // Keep the sweep short: every seventh affected pair.
    out.into_iter().step_by(7).collect()
}

/// The standard rules with one mutation applied.
pub fn mutated_table(index: usize) -> InflationTable {
    let (prefix, from, to, _, _) = MUTATIONS[index];
    InflationTable::parse(&mutate(prefix, from, to)).unwrap()
}
