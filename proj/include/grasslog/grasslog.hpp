#pragma once

#include "grasslog/exact_fields.hpp"
#include "grasslog/linalg.hpp"
#include "grasslog/permutation.hpp"
#include "grasslog/configuration.hpp"
#include "grasslog/chain.hpp"
#include "grasslog/smith.hpp"
#include "grasslog/homology.hpp"
#include "grasslog/forms.hpp"
#include "grasslog/milnor.hpp"
#include "grasslog/mp/real.hpp"
#include "grasslog/mp/complex.hpp"
#include "grasslog/polylog.hpp"
#include "grasslog/grassmann.hpp"
#include "grasslog/suites.hpp"
