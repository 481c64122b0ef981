import logging

logger = logging.getLogger("milnorcount")
