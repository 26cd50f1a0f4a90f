#pragma once

#include "pathsig/analysis.hpp"
#include "pathsig/cumulants.hpp"
#include "pathsig/io.hpp"
#include "pathsig/lie.hpp"
#include "pathsig/path.hpp"
#include "pathsig/scalar.hpp"
#include "pathsig/series.hpp"
#include "pathsig/tensor.hpp"
#include "pathsig/word.hpp"
