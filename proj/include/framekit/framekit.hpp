#pragma once

#include "framekit/errors.hpp"
#include "framekit/ambient.hpp"
#include "framekit/frame.hpp"
#include "framekit/minseq.hpp"
#include "framekit/operators.hpp"
#include "framekit/c0detect.hpp"
#include "framekit/hilbert.hpp"
#include "framekit/io.hpp"
