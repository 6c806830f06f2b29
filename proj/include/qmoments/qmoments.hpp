#pragma once

#include "errors.hpp"
#include "ring.hpp"
#include "series.hpp"
#include "series_io.hpp"
#include "standard_forms.hpp"
#include "bivariate.hpp"
#include "partitions.hpp"
#include "linalg.hpp"
#include "quasimod.hpp"
#include "relations.hpp"
#include "congruences.hpp"
#include "cache.hpp"
