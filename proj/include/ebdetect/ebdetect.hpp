#pragma once

// Umbrella header: dipole-array far fields, generalized electric + magnetic
// photodetection, the Fock-space cross-check, scans, and file I/O.

#include "ebdetect/config.hpp"
#include "ebdetect/detector.hpp"
#include "ebdetect/direction.hpp"
#include "ebdetect/export.hpp"
#include "ebdetect/farfield.hpp"
#include "ebdetect/fock.hpp"
#include "ebdetect/quadrature.hpp"
#include "ebdetect/scan.hpp"
#include "ebdetect/vec.hpp"
