#pragma once

#include "qvertex/coupling.hpp"
#include "qvertex/counting.hpp"
#include "qvertex/error.hpp"
#include "qvertex/filters.hpp"
#include "qvertex/forms.hpp"
#include "qvertex/linalg.hpp"
#include "qvertex/scattering.hpp"
#include "qvertex/sweep.hpp"
