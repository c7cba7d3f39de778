#pragma once

#include "jetvar/errors.hpp"
#include "jetvar/multi_index.hpp"
#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/format.hpp"
#include "jetvar/forms.hpp"
#include "jetvar/prolongation.hpp"
#include "jetvar/variational.hpp"
#include "jetvar/symmetry.hpp"
#include "jetvar/numeric.hpp"
