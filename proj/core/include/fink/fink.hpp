#pragma once

#include "fink/block.hpp"
#include "fink/diagonal.hpp"
#include "fink/error.hpp"
#include "fink/span.hpp"
#include "fink/stream.hpp"
#include "fink/structure.hpp"
