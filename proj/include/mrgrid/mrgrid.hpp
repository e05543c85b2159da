#pragma once

#include "mrgrid/code.hpp"
#include "mrgrid/constructions.hpp"
#include "mrgrid/decoder.hpp"
#include "mrgrid/error.hpp"
#include "mrgrid/field.hpp"
#include "mrgrid/gridgraph.hpp"
#include "mrgrid/io.hpp"
#include "mrgrid/matrix.hpp"
#include "mrgrid/moore.hpp"
#include "mrgrid/reductions.hpp"
#include "mrgrid/search.hpp"
#include "mrgrid/verifier.hpp"
