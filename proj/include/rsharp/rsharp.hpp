#pragma once

#include "rsharp/errors.hpp"
#include "rsharp/params.hpp"
#include "rsharp/special.hpp"
#include "rsharp/grid.hpp"
#include "rsharp/kernels.hpp"
#include "rsharp/spectral.hpp"
#include "rsharp/extremal.hpp"
#include "rsharp/verifier.hpp"
#include "rsharp/io.hpp"
