//! Convolution of n-words into padded column words and back.

use mta::words::{convolve, deconvolve, PaddedWord};
use mta::NWord;

fn main() -> mta::Result<()> {
    let x = NWord::from_strs(&["abb", "a", ""]);
    let p = convolve(&x);
    println!("{x} -> {p}");
    println!("back: {}", deconvolve(&p)?);

    // a pad followed by a letter on the same track is rejected
    let bad = PaddedWord::parse(2, "_a ba")?;
    println!("{bad}: {:?}", deconvolve(&bad).unwrap_err());
    Ok(())
}
