#pragma once

#include "optadj/error.hpp"
#include "optadj/rational.hpp"
#include "optadj/graph.hpp"
#include "optadj/adjustment.hpp"
#include "optadj/flow.hpp"
#include "optadj/optimizer.hpp"
#include "optadj/oracle.hpp"
#include "optadj/io.hpp"
