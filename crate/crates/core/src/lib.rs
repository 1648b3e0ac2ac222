/*!
Exact computations with finitely presented multi-parameter persistence
modules.

Modules over `ℝⁿ` are given by graded presentations with coefficients in
`ℚ` or a prime field. On top of that the crate computes:

* minimal free resolutions and graded Betti numbers,
* chain complexes of free modules, chain maps, homotopies and
  nullhomotopy certificates,
* interleavings at the module, homotopy and derived levels, together with
  verified brackets for the interleaving distance,
* homology modules of bifiltered simplicial complexes.

All arithmetic is exact. Searches run over a finite field and return
certificates that re-verify independently of the search.

```
use pershom::exact::{int, Field};
use pershom::presentation::betti;
use pershom::standard;

let n1 = standard::quadrant_plus_box(Field::Rational, &int(1));
let b0 = betti(&n1, 0).unwrap();
assert_eq!(b0.values().sum::<usize>(), 2);
```

The guide in `book/` walks through the concepts; its code listings are
compiled and run as doc tests of this crate.
*/

pub mod complexes;
pub mod error;
pub mod exact;
pub mod freemod;
pub mod grading;
pub mod ingest;
pub mod interleave;
pub mod io;
pub mod presentation;
pub mod standard;

pub use crate::complexes::{ChainMap, FreeChainComplex, Homotopy};
pub use crate::error::{Error, Result};
pub use crate::exact::{Field, Matrix, Rational, Scalar};
pub use crate::freemod::{FreeModule, GradedMatrix};
pub use crate::grading::Grade;
pub use crate::ingest::{Bifiltration, Simplex};
pub use crate::interleave::{DistanceBracket, InterleavingCertificate, Level};
pub use crate::presentation::{FPMorphism, Presentation};

// The guide's listings run as doc tests, one module per chapter so a
// failure points at its chapter.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/resolutions.md")]
    mod resolutions {}
    #[doc = include_str!("../../../book/src/complexes.md")]
    mod complexes {}
    #[doc = include_str!("../../../book/src/interleavings.md")]
    mod interleavings {}
    #[doc = include_str!("../../../book/src/distance.md")]
    mod distance {}
    #[doc = include_str!("../../../book/src/bifiltrations.md")]
    mod bifiltrations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
