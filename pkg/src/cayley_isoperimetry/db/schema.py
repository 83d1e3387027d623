TABLE_BALL_CACHE = "ball_cache"

BALL_CACHE_COLUMNS = ["key", "version", "radius", "payload", "created_at"]
