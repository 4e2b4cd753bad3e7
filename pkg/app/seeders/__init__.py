# Seeders package