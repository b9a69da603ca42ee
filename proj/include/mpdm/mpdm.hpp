#pragma once

// Multiset-partition and constant-composition distribution matching:
// exact invertible mapping between uniform bit blocks and shaped amplitude
// sequences, plus the numerical machinery to evaluate rate loss and AWGN
// achievable information rates.

#include "mpdm/air.hpp"
#include "mpdm/bigint.hpp"
#include "mpdm/bits.hpp"
#include "mpdm/ccdm.hpp"
#include "mpdm/codebook.hpp"
#include "mpdm/composition.hpp"
#include "mpdm/constellation.hpp"
#include "mpdm/crc32.hpp"
#include "mpdm/descriptor.hpp"
#include "mpdm/errors.hpp"
#include "mpdm/framing.hpp"
#include "mpdm/pairs.hpp"
#include "mpdm/pmf.hpp"
#include "mpdm/quadrature.hpp"
#include "mpdm/sweep.hpp"
