//! Ready-made inputs: the binary-numbers grammar family and its cost
//! functions, used throughout the tests and examples.

/// Weight functions for the binary-numbers grammar: `q` and `p` together
/// form digit 0, `j` is digit 1, so a term's weight is the number it spells
/// with the least significant digit outermost.
pub const BINARY_NUMBERS_COSTS: &str = "\
a = 0
q(x) = x
p(x) = 2*x
j(x) = 2*x + 1
";

/// Grammar with `Q0 ::= a`, `P(n+1) ::= p(Qn)` and
/// `Q(n+1) ::= q(P(n+1)) | j(Qn)` for `n < n_max`.
///
/// `L(Qn)` holds the `n`-digit binary numbers. The grammar has
/// `2*n_max + 1` rules and `3*n_max + 1` alternatives.
pub fn binary_numbers_rtg(n_max: usize) -> String {
    let mut s = String::from("Q0 ::= a ;\n");
    for n in 1..=n_max {
        s.push_str(&format!("P{n} ::= p(Q{m}) ;\n", m = n - 1));
        s.push_str(&format!("Q{n} ::= q(P{n}) | j(Q{m}) ;\n", m = n - 1));
    }
    s
}
