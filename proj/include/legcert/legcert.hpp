// include/legcert/legcert.hpp — umbrella header.

#pragma once

#include "legcert/action.hpp"
#include "legcert/braid.hpp"
#include "legcert/certificate.hpp"
#include "legcert/diagram.hpp"
#include "legcert/errors.hpp"
#include "legcert/feasibility.hpp"
#include "legcert/grading.hpp"
#include "legcert/index.hpp"
#include "legcert/pipeline.hpp"
#include "legcert/pushout.hpp"
#include "legcert/rational.hpp"
#include "legcert/simplex.hpp"
#include "legcert/svg.hpp"
