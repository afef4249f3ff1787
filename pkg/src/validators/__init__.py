from validators.invariants import InvariantCheck, InvariantSummary, InvariantValidator
