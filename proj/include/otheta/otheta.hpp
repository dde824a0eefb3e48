#pragma once

#include "otheta/bounds.hpp"
#include "otheta/construction.hpp"
#include "otheta/errors.hpp"
#include "otheta/generators.hpp"
#include "otheta/geometry.hpp"
#include "otheta/io.hpp"
#include "otheta/lemmas.hpp"
#include "otheta/metrics.hpp"
