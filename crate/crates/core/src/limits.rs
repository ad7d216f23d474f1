/*!
Size caps for the exponential-time routines.

Every cap can be replaced at run time by setting `BAGREFINE_MAXN`; that one
value then stands in for all of the defaults below, which is mainly useful
for forcing small caps in tests or lifting one briefly on a beefy machine.
*/

pub const ENUMERATE: usize = 8;
pub const ENUMERATE_SUBCUBIC: usize = 10;
pub const TREEWIDTH: usize = 20;
pub const PATHWIDTH: usize = 18;
pub const REFINE: usize = 16;
pub const MINOR_PATTERN: usize = 10;
pub const MINOR_HOST: usize = 20;
pub const SUBDIVISION_HOST: usize = 1000;
pub const CLASSIFY: usize = 14;

pub fn effective(default_cap: usize) -> usize {
    match std::env::var("BAGREFINE_MAXN") {
        Ok(s) => s.trim().parse().unwrap_or(default_cap),
        Err(_) => default_cap,
    }
}
