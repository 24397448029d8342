//! Characters modulo m: values, conductors, parities and Gauss sums.
use eisencusp::characters::{enumerate_characters, primitive_characters};

fn main() -> eisencusp::Result<()> {
    let m = 20;
    for (i, chi) in enumerate_characters(m).iter().enumerate() {
        println!(
            "#{i:<2} {chi}  order {}  conductor {:>2}  parity {:+}",
            chi.order(),
            chi.conductor(),
            chi.parity()
        );
    }
    for chi in primitive_characters(13).iter().take(3) {
        let level = 13 * chi.order();
        let g = chi.gauss_sum(level)?;
        let prod = &g * &chi.conj().gauss_sum(level)?;
        println!("{chi}: G(chi) G(conj chi) = {:?}", prod.as_rational().map(|r| r.to_string()));
    }
    Ok(())
}
