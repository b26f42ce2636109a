#pragma once

#include "summa/errors.hpp"
#include "summa/expression.hpp"
#include "summa/quadrature.hpp"
#include "summa/orthopoly.hpp"
#include "summa/fourier.hpp"
#include "summa/kernels.hpp"
#include "summa/parallel.hpp"
#include "summa/summation.hpp"
#include "summa/pde.hpp"
