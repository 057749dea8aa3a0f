#pragma once

#include "centerline/corpus.hpp"
#include "centerline/knowledge.hpp"
#include "centerline/ranking.hpp"
#include "centerline/resolution.hpp"
#include "centerline/centering.hpp"
#include "centerline/export.hpp"
#include "centerline/evaluation.hpp"
