#pragma once

#include "cliffordlab/blade_algebra.hpp"
#include "cliffordlab/cocycle.hpp"
#include "cliffordlab/errors.hpp"
#include "cliffordlab/gaussian_rational.hpp"
#include "cliffordlab/groups.hpp"
#include "cliffordlab/json_io.hpp"
#include "cliffordlab/linear_algebra.hpp"
#include "cliffordlab/matrix.hpp"
#include "cliffordlab/realify.hpp"
#include "cliffordlab/rep.hpp"
#include "cliffordlab/signature.hpp"
#include "cliffordlab/verify.hpp"
