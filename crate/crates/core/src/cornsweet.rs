//! The Cornsweet brightness profile.
//!
//! Two plateaus of equal brightness 173 are joined by a darkening ramp on
//! the left (172 down to 167) and a brightening ramp on the right (178 down
//! to 174). Seen whole, the left plateau looks darker than the right one.

use crate::pgm::Pgm;

/// Plateau brightness on both sides of the edge (0 is black, 255 white).
pub const PLATEAU: u8 = 173;

/// The 13-pixel profile across the edge.
pub const SET_C: [u8; 13] = [
    173, 172, 171, 170, 169, 168, 167, 178, 177, 176, 175, 174, 173,
];

/// `left_pad` plateau pixels, then [`SET_C`], then `right_pad` plateau pixels.
pub fn cornsweet_profile(left_pad: usize, right_pad: usize) -> Vec<f64> {
    profile_pixels(left_pad, right_pad)
        .into_iter()
        .map(f64::from)
        .collect()
}

fn profile_pixels(left_pad: usize, right_pad: usize) -> Vec<u8> {
    let mut row = vec![PLATEAU; left_pad];
    row.extend_from_slice(&SET_C);
    row.extend(std::iter::repeat_n(PLATEAU, right_pad));
    row
}

/// A `height`-row graymap (maxval 255) whose rows all equal
/// `cornsweet_profile(width_pad, width_pad)`.
pub fn cornsweet_image(width_pad: usize, height: usize) -> Pgm {
    let row = profile_pixels(width_pad, width_pad);
    let width = row.len();
    let pixels = row
        .iter()
        .map(|&p| u16::from(p))
        .cycle()
        .take(width * height)
        .collect();
    Pgm::new(width, height, 255, pixels)
}
