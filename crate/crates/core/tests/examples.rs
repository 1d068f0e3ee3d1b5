//! Every example under `examples/` runs to completion.

macro_rules! example {
    ($name:ident, $file:literal) => {
        #[path = $file]
        mod $name;

        #[test]
        fn $name() {
            $name::run().expect(concat!($file, " should run"));
        }
    };
}

example!(evaluate, "../examples/evaluate.rs");
example!(argument, "../examples/argument.rs");
example!(winding, "../examples/winding.rs");
example!(frontier, "../examples/frontier.rs");
example!(vortex, "../examples/vortex.rs");
example!(turns_budget, "../examples/turns_budget.rs");
example!(prime_cache, "../examples/prime_cache.rs");
