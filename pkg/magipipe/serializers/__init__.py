"""
Serializers of the files written by the command line.
"""
from magipipe.serializers.json_serializer import JsonSerializer
from magipipe.serializers.serializer import Serializer

__all__ = ["Serializer", "JsonSerializer"]
