#pragma once

#include "dseq/convergence.hpp"
#include "dseq/diffops.hpp"
#include "dseq/double_seq.hpp"
#include "dseq/duals.hpp"
#include "dseq/errors.hpp"
#include "dseq/matrix4d.hpp"
#include "dseq/scalar.hpp"
#include "dseq/summation.hpp"
#include "dseq/verdict.hpp"
