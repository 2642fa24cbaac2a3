use tropline_core::chroma::{find_arms, monochromatic_cells, plausible_colourings};
use tropline_core::newton::{enumerate_semiuniform, face_census};
use tropline_core::Colour;

#[test]
fn monochromatic_free_colourings_carry_arms() {
    for (n, expected) in [(1, 0), (2, 6), (3, 6), (4, 0)] {
        let mut free = 0;
        for sub in enumerate_semiuniform(n).unwrap() {
            for cs in plausible_colourings(&sub).unwrap() {
                let both = [Colour::Red, Colour::Blue]
                    .iter()
                    .all(|c| cs.colours.values().any(|x| x == c));
                if both && monochromatic_cells(&cs).is_empty() {
                    free += 1;
                    assert!(!find_arms(&cs).is_empty(), "n={n}: no arm in {:?}", face_census(&sub));
                }
            }
        }
        assert_eq!(free, expected, "n={n}");
    }
}
