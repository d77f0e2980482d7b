#pragma once

#include "ffdyn/ensemble.hpp"

namespace ffdyn::reference {

/// Straight-line serial implementation of average_periodic: streams maps one
/// at a time and runs the full (internally cross-checked) census on each.
/// Kept as the oracle the OpenMP kernel is tested against; also the baseline
/// of the benchmark tool. Results must match average_periodic exactly.
EnsembleReport average_periodic(const FieldCtx& k, const EnsembleSpec& spec);

/// Serial tuple-space scan using the Poly-based specialize()/tuple_generates()
/// path instead of the kernel's raw buffers.
BadLocusReport bad_locus_report(const FieldCtx& k, int d);

}  // namespace ffdyn::reference
