#pragma once

#include "quilt/arctan.hpp"
#include "quilt/codes.hpp"
#include "quilt/collection.hpp"
#include "quilt/enumeration.hpp"
#include "quilt/errors.hpp"
#include "quilt/finite_maps.hpp"
#include "quilt/glue.hpp"
#include "quilt/partial_eval.hpp"
#include "quilt/rational.hpp"
#include "quilt/realcodes.hpp"
#include "quilt/realname.hpp"
#include "quilt/setops.hpp"
#include "quilt/topology.hpp"
#include "quilt/uv.hpp"
