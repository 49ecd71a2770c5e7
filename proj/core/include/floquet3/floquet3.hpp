#pragma once

#include "floquet3/asymptotics.hpp"
#include "floquet3/coeffs.hpp"
#include "floquet3/error.hpp"
#include "floquet3/matrix3.hpp"
#include "floquet3/monodromy.hpp"
#include "floquet3/multiplier.hpp"
#include "floquet3/parallel.hpp"
#include "floquet3/perturbation.hpp"
#include "floquet3/quadrature.hpp"
#include "floquet3/spec_file.hpp"
#include "floquet3/spectrum.hpp"
