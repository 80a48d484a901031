use std::sync::OnceLock;

use super::{parse_table, Diagram};
use crate::error::{Error, Result};

const KNOTS: &str = include_str!("../../data/knots.pd");

pub const BUNDLED_NAMES: [&str; 14] = [
    "unknot", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "7_1", "torus2_2", "torus2_3", "torus2_4", "torus2_5",
    "torus2_6", "torus2_7",
];

/// Every record of the bundled table, in file order.
pub fn bundled_table() -> Vec<Diagram> {
    cached().to_vec()
}

fn cached() -> &'static [Diagram] {
    static TABLE: OnceLock<Vec<Diagram>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(KNOTS).expect("bundled table parses"))
}

pub fn bundled(name: &str) -> Result<Diagram> {
    cached()
        .iter()
        .find(|d| d.name() == Some(name))
        .cloned()
        .ok_or_else(|| Error::UnknownKnot(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdcode::torus2;

    #[test]
    fn names_match_records() {
        let names: Vec<String> = bundled_table().iter().map(|d| d.name().unwrap().to_string()).collect();
        assert_eq!(names, BUNDLED_NAMES);
    }

    #[test]
    fn torus_records_match_generator() {
        for k in 2..=7 {
            assert_eq!(bundled(&format!("torus2_{k}")).unwrap(), torus2(k).unwrap());
        }
    }

    #[test]
    fn knots_have_one_arc_per_crossing() {
        for d in bundled_table() {
            if d.components().len() == 1 && d.crossing_count() > 0 {
                assert_eq!(d.arc_count(), d.crossing_count(), "{:?}", d.name());
            }
            if d.crossing_count() > 0 {
                assert_eq!(d.region_count(), d.crossing_count() + 2);
                assert_eq!(d.edge_count(), 2 * d.crossing_count());
            }
        }
    }

    #[test]
    fn unknown_name() {
        assert_eq!(bundled("9_42").unwrap_err(), Error::UnknownKnot("9_42".into()));
    }
}
