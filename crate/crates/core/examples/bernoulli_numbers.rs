//! Generalized Bernoulli numbers B_1 and B_2 of Dirichlet characters.
use eisencusp::bernoulli::generalized_bernoulli;
use eisencusp::characters::enumerate_characters;

fn main() -> eisencusp::Result<()> {
    for chi in enumerate_characters(7) {
        let o = chi.order();
        println!(
            "{chi} ({}): B_1 = {}, B_2 = {}",
            if chi.is_even() { "even" } else { "odd" },
            generalized_bernoulli(&chi, 1, o)?,
            generalized_bernoulli(&chi, 2, o)?
        );
    }
    Ok(())
}
