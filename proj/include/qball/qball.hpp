#pragma once

#include "context.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "plancherel.hpp"
#include "qcore.hpp"
#include "qdiff.hpp"
#include "radial.hpp"
#include "spherical.hpp"
#include "verify.hpp"
